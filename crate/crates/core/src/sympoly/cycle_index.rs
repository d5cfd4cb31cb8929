use crate::error::{Error, Result};
use crate::scalar::{lift, Field};

use super::elementary::MomentVector;
use super::partitions::{class_weighted_sum, factorial_u128, partitions, PartitionVector};

/// Largest `k` accepted by [`even_odd_split`], which walks all of `S_k`.
pub const MAX_ENUMERATION_K: usize = 8;

fn require_len<T>(x: &[T], k: usize) {
    assert!(x.len() >= k, "need at least {k} arguments, have {}", x.len());
}

/// Complete exponential Bell polynomial
/// `B_k(x) = Σ_λ k!/(∏ n_j!·(j!)^{n_j}) ∏ x_j^{n_j}`.
///
/// # Panics
/// If `x` has fewer than `k` entries.
pub fn bell_polynomial<T: Field>(k: usize, x: &[T]) -> T {
    require_len(x, k);
    partitions(k).fold(T::zero(), |acc, lambda| {
        let coeff: T = match lambda.set_partition_count() {
            Some(c) => lift(c),
            None => {
                let mut c: T = lift(1);
                for m in 1..=k {
                    c = c * lift::<T>(m as u128);
                }
                for (j, n) in lambda.parts() {
                    for m in 1..=n {
                        c = c / lift::<T>(m as u128);
                    }
                    for _ in 0..n {
                        for i in 1..=j {
                            c = c / lift::<T>(i as u128);
                        }
                    }
                }
                c
            }
        };
        acc + coeff * lambda.monomial(|j| x[j - 1].clone())
    })
}

/// Cycle index of the symmetric group, `Z(S_k)(x) = (1/k!) Σ_σ ∏ x_j^{c_j(σ)}`.
///
/// # Panics
/// If `x` has fewer than `k` entries.
pub fn cycle_index_s<T: Field>(k: usize, x: &[T]) -> T {
    require_len(x, k);
    class_weighted_sum(k, |lambda| lambda.monomial(|j| x[j - 1].clone()))
}

/// Cycle index of the alternating group `A_k`. For `k ≥ 2` this is the
/// partition sum with parity factor `1 + (−1)^{n_2+n_4+⋯}`; `A_0` and `A_1`
/// are trivial groups of order one.
///
/// # Panics
/// If `x` has fewer than `k` entries.
pub fn cycle_index_a<T: Field>(k: usize, x: &[T]) -> T {
    require_len(x, k);
    if k < 2 {
        return cycle_index_s(k, x);
    }
    class_weighted_sum(k, |lambda| {
        if lambda.is_even_permutation() {
            let two = T::one() + T::one();
            two * lambda.monomial(|j| x[j - 1].clone())
        } else {
            T::zero()
        }
    })
}

/// Cycle type of a permutation given in one-line notation (`perm[i] = σ(i)`).
pub fn cycle_type(perm: &[usize]) -> PartitionVector {
    let k = perm.len();
    let mut seen = vec![false; k];
    let mut counts = vec![0; k];
    for start in 0..k {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        counts[len - 1] += 1;
    }
    PartitionVector::new(counts).expect("cycle lengths sum to k")
}

/// Calls `f` on every permutation of `0..k` (Heap's algorithm).
pub fn for_each_permutation(k: usize, mut f: impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = (0..k).collect();
    let mut c = vec![0; k];
    f(&perm);
    let mut i = 1;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            f(&perm);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Sums `∏ p_j^{c_j(σ)}` separately over even and odd permutations of `S_k`.
/// The moment inequality of order `k` holds iff the even sum is at least the
/// odd one; their difference is `k!·e_k`.
pub fn even_odd_split<T: Field>(k: usize, p: &MomentVector<T>) -> Result<(T, T)> {
    if k > MAX_ENUMERATION_K {
        return Err(Error::InvalidArgument(format!(
            "even/odd enumeration walks all {k}! permutations; k must be at most {MAX_ENUMERATION_K} \
             (use the f-sequence path for larger k)"
        )));
    }
    if p.len() < k {
        return Err(Error::InvalidArgument(format!("need {k} moments, have {}", p.len())));
    }
    let mut even = T::zero();
    let mut odd = T::zero();
    for_each_permutation(k, |perm| {
        let ty = cycle_type(perm);
        let term = ty.monomial(|j| p.p(j).clone());
        if ty.is_even_permutation() {
            even = even.clone() + term;
        } else {
            odd = odd.clone() + term;
        }
    });
    Ok((even, odd))
}

/// `k!` in the target field.
pub fn factorial<T: Field>(k: usize) -> T {
    match factorial_u128(k) {
        Some(f) => lift(f),
        None => (1..=k).fold(T::one(), |acc, m| acc * lift::<T>(m as u128)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{exact, Exact};

    #[test]
    fn bell_polynomial_values() {
        assert_eq!(bell_polynomial(1, &[7.0]), 7.0);
        assert_eq!(bell_polynomial(3, &[1.0, 1.0, 1.0]), 5.0);
        assert_eq!(bell_polynomial(0, &[] as &[f64]), 1.0);
    }

    #[test]
    fn symmetric_cycle_index_small() {
        assert_eq!(cycle_index_s(2, &[1.0, 3.0]), 2.0);
        for k in 0..=7 {
            assert_eq!(cycle_index_s(k, &vec![exact(1, 1); k]), exact(1, 1));
        }
    }

    #[test]
    fn alternating_cycle_index_small() {
        assert_eq!(cycle_index_a(1, &[exact(5, 3)]), exact(5, 3));
        assert_eq!(cycle_index_a(3, &[1.0, 1.0, 1.0]), 1.0);
        // A_3 = {e, (123), (132)}: (x1^3 + 2 x3)/3
        let x = [exact(2, 1), exact(7, 1), exact(5, 1)];
        assert_eq!(cycle_index_a(3, &x), exact(8 + 10, 3));
    }

    #[test]
    fn heap_visits_every_permutation_once() {
        let mut seen = std::collections::BTreeSet::new();
        for_each_permutation(5, |p| {
            assert!(seen.insert(p.to_vec()));
        });
        assert_eq!(seen.len(), 120);
    }

    #[test]
    fn even_odd_split_small_k() {
        let p = MomentVector::new(vec![exact(2, 3), exact(1, 5)]);
        assert_eq!(even_odd_split(1, &p).unwrap(), (exact(2, 3), exact(0, 1)));
        assert_eq!(even_odd_split(2, &p).unwrap(), (exact(4, 9), exact(1, 5)));
        let long = MomentVector::<Exact>::new(vec![exact(1, 1); 9]);
        assert!(even_odd_split(9, &long).is_err());
    }
}

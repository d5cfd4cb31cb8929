use crate::scalar::{lift, pow, Field};

use super::partitions::class_weighted_sum;

/// Moments `p_1, …, p_m` (power sums of a spectrum).
#[derive(Debug, Clone, PartialEq)]
pub struct MomentVector<T> {
    values: Vec<T>,
}

impl<T: Field> MomentVector<T> {
    pub fn new(values: Vec<T>) -> Self {
        Self { values }
    }

    /// Power sums `Σ λ^j` for `j = 1..=m`.
    pub fn from_spectrum(eigs: &[T], m: usize) -> Self {
        Self::new((1..=m).map(|j| eigs.iter().fold(T::zero(), |acc, x| acc + pow(x, j))).collect())
    }

    /// `p_j`, 1-indexed.
    pub fn p(&self, j: usize) -> &T {
        &self.values[j - 1]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    fn require(&self, k: usize) {
        assert!(self.len() >= k, "need at least {k} moments, have {}", self.len());
    }
}

/// `e_k(x_1, …, x_n)` straight from the definition: the sum over all
/// `k`-subsets of products. Zero for `k > n`.
pub fn elementary_direct<T: Field>(eigs: &[T], k: usize) -> T {
    let n = eigs.len();
    if k > n {
        return T::zero();
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut acc = T::zero();
    loop {
        acc = acc + idx.iter().fold(T::one(), |prod, &i| prod * eigs[i].clone());
        // next k-combination in lexicographic order
        let mut pos = k;
        while pos > 0 && idx[pos - 1] == n - k + pos - 1 {
            pos -= 1;
        }
        if pos == 0 {
            return acc;
        }
        idx[pos - 1] += 1;
        for i in pos..k {
            idx[i] = idx[i - 1] + 1;
        }
    }
}

/// `[e_0, e_1, …, e_n]` by expanding `∏ (1 + λ_j t)`.
pub fn elementary_from_roots<T: Field>(eigs: &[T]) -> Vec<T> {
    let mut e = vec![T::one()];
    for x in eigs {
        e.push(T::zero());
        for k in (1..e.len()).rev() {
            let prev = e[k - 1].clone();
            e[k] = e[k].clone() + prev * x.clone();
        }
    }
    e
}

/// Ascending coefficients of `∏ (t − x_j)`.
pub fn vieta_coefficients<T: Field>(roots: &[T]) -> Vec<T> {
    let mut c = vec![T::one()];
    for x in roots {
        let mut next = vec![T::zero(); c.len() + 1];
        for (i, a) in c.iter().enumerate() {
            next[i + 1] = next[i + 1].clone() + a.clone();
            next[i] = next[i].clone() - a.clone() * x.clone();
        }
        c = next;
    }
    c
}

/// `e_1, …, e_n` from moments by Newton's recursion
/// `k·e_k = Σ_{i=1..k} (−1)^{i−1} e_{k−i} p_i`, `e_0 = 1`.
///
/// # Panics
/// If fewer than `n` moments are supplied.
pub fn newton_elementary<T: Field>(p: &MomentVector<T>, n: usize) -> Vec<T> {
    p.require(n);
    let mut e = vec![T::one()];
    for k in 1..=n {
        let mut acc = T::zero();
        for i in 1..=k {
            let term = e[k - i].clone() * p.p(i).clone();
            acc = if i % 2 == 1 { acc + term } else { acc - term };
        }
        e.push(acc / lift::<T>(k as u128));
    }
    e.split_off(1)
}

/// `e_k = (−1)^k Σ_λ ∏_j (−p_j)^{n_j} / (n_j!·j^{n_j})`, the partition-sum
/// closed form, i.e. `(−1)^k Z(S_k)(−p_1, …, −p_k)`.
///
/// # Panics
/// If fewer than `k` moments are supplied.
pub fn elementary_closed_form<T: Field>(p: &MomentVector<T>, k: usize) -> T {
    p.require(k);
    let s = class_weighted_sum(k, |lambda| lambda.monomial(|j| -p.p(j).clone()));
    if k % 2 == 0 {
        s
    } else {
        -s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{exact, Exact};

    #[test]
    fn direct_small_cases() {
        assert_eq!(elementary_direct(&[1.0, 2.0, 3.0], 2), 11.0);
        assert_eq!(elementary_direct(&[1.0, 2.0, 3.0], 0), 1.0);
        assert_eq!(elementary_direct(&[1.0, 2.0, 3.0], 4), 0.0);
        assert_eq!(elementary_direct::<f64>(&[], 0), 1.0);
        let bell = [exact(1, 2), exact(1, 2), exact(1, 2), exact(-1, 2)];
        assert_eq!(elementary_direct(&bell, 4), exact(-1, 16));
    }

    #[test]
    fn newton_on_roots_one_two_three() {
        let p = MomentVector::new(vec![6.0, 14.0, 36.0]);
        assert_eq!(newton_elementary(&p, 3), vec![6.0, 11.0, 6.0]);
        let zero = MomentVector::new(vec![0.0; 5]);
        assert_eq!(newton_elementary(&zero, 5), vec![0.0; 5]);
    }

    #[test]
    fn closed_form_low_orders() {
        let p = MomentVector::new(vec![exact(3, 7), exact(5, 11), exact(-2, 3)]);
        assert_eq!(elementary_closed_form(&p, 0), exact(1, 1));
        assert_eq!(elementary_closed_form(&p, 1), p.p(1).clone());
        let expected2 = (p.p(1).clone() * p.p(1).clone() - p.p(2).clone()) / exact(2, 1);
        assert_eq!(elementary_closed_form(&p, 2), expected2);
        let roots = MomentVector::<Exact>::from_spectrum(&[exact(1, 1), exact(2, 1), exact(3, 1)], 3);
        assert_eq!(elementary_closed_form(&roots, 3), exact(6, 1));
    }

    #[test]
    fn vieta_expansion() {
        // (t-1)(t-2)(t-3) = t^3 - 6t^2 + 11t - 6
        assert_eq!(vieta_coefficients(&[1.0, 2.0, 3.0]), vec![-6.0, 11.0, -6.0, 1.0]);
        assert_eq!(elementary_from_roots(&[1.0, 2.0, 3.0]), vec![1.0, 6.0, 11.0, 6.0]);
    }

    #[test]
    #[should_panic(expected = "need at least")]
    fn closed_form_needs_enough_moments() {
        elementary_closed_form(&MomentVector::new(vec![1.0]), 2);
    }
}

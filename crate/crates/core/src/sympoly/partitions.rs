use crate::scalar::{lift, Field};

/// Largest `k` for which `k!` fits in a `u128`.
pub const EXACT_FACTORIAL_LIMIT: usize = 34;

/// Multiplicity vector `(n_1, …, n_k)` with `Σ j·n_j = k`, i.e. the cycle
/// type of a permutation in `S_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionVector {
    multiplicities: Vec<usize>,
}

impl PartitionVector {
    /// Returns `None` unless `Σ j·n_j` equals the vector length.
    pub fn new(multiplicities: Vec<usize>) -> Option<Self> {
        let weight: usize = multiplicities.iter().enumerate().map(|(i, &n)| (i + 1) * n).sum();
        (weight == multiplicities.len()).then_some(Self { multiplicities })
    }

    pub fn k(&self) -> usize {
        self.multiplicities.len()
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    /// `n_j` (1-indexed).
    pub fn count(&self, j: usize) -> usize {
        self.multiplicities[j - 1]
    }

    /// Nonzero `(j, n_j)` pairs.
    pub fn parts(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.multiplicities.iter().enumerate().filter(|(_, &n)| n > 0).map(|(i, &n)| (i + 1, n))
    }

    /// `n_2 + n_4 + ⋯`; odd exactly for odd permutations.
    pub fn even_cycle_count(&self) -> usize {
        self.parts().filter(|(j, _)| j % 2 == 0).map(|(_, n)| n).sum()
    }

    pub fn is_even_permutation(&self) -> bool {
        self.even_cycle_count() % 2 == 0
    }

    /// Number of permutations of this cycle type, `k!/∏ n_j!·j^{n_j}`.
    pub fn class_size(&self) -> Option<u128> {
        let k = self.k();
        let kf = factorial_u128(k)?;
        let mut denom: u128 = 1;
        for (j, n) in self.parts() {
            // the denominator divides k!, so it cannot overflow
            denom *= factorial_u128(n)? * (j as u128).pow(n as u32);
        }
        Some(kf / denom)
    }

    /// Number of set partitions of this block type, `k!/∏ n_j!·(j!)^{n_j}`.
    pub fn set_partition_count(&self) -> Option<u128> {
        let k = self.k();
        let kf = factorial_u128(k)?;
        let mut denom: u128 = 1;
        for (j, n) in self.parts() {
            denom *= factorial_u128(n)? * factorial_u128(j)?.pow(n as u32);
        }
        Some(kf / denom)
    }

    /// `∏ 1/(n_j!·j^{n_j})` evaluated in `T`.
    pub fn inverse_centralizer<T: Field>(&self) -> T {
        let mut acc = T::one();
        for (j, n) in self.parts() {
            let jt: T = lift(j as u128);
            for m in 1..=n {
                acc = acc / (lift::<T>(m as u128) * jt.clone());
            }
        }
        acc
    }

    /// `∏ x_j^{n_j}` with `x` 1-indexed through the closure.
    pub fn monomial<T: Field>(&self, mut x: impl FnMut(usize) -> T) -> T {
        self.parts().fold(T::one(), |acc, (j, n)| acc * crate::scalar::pow(&x(j), n))
    }
}

pub fn factorial_u128(n: usize) -> Option<u128> {
    (1..=n as u128).try_fold(1u128, |acc, m| acc.checked_mul(m))
}

/// Streams every partition of `k` once, in ascending lexicographic order of
/// `(n_1, …, n_k)`.
pub fn partitions(k: usize) -> Partitions {
    Partitions { k, current: None, done: false }
}

#[derive(Debug, Clone)]
pub struct Partitions {
    k: usize,
    current: Option<Vec<usize>>,
    done: bool,
}

impl Partitions {
    fn first(k: usize) -> Vec<usize> {
        let mut v = vec![0; k];
        if k > 0 {
            v[k - 1] = 1;
        }
        v
    }

    /// Lexicographic successor. A remainder `r ≤ k` can be completed with
    /// parts larger than `j` iff `r == 0` or `r > j`, and the smallest such
    /// completion is the single part `r`.
    fn advance(k: usize, v: &mut [usize]) -> bool {
        let prefix_weight: Vec<usize> = v
            .iter()
            .enumerate()
            .scan(0, |acc, (i, &n)| {
                let before = *acc;
                *acc += (i + 1) * n;
                Some(before)
            })
            .collect();
        for j in (1..=k).rev() {
            let before = prefix_weight[j - 1];
            let mut n = v[j - 1] + 1;
            while before + j * n <= k {
                let r = k - before - j * n;
                if r == 0 || r > j {
                    v[j - 1] = n;
                    v[j..].iter_mut().for_each(|x| *x = 0);
                    if r > 0 {
                        v[r - 1] = 1;
                    }
                    return true;
                }
                n += 1;
            }
        }
        false
    }
}

impl Iterator for Partitions {
    type Item = PartitionVector;

    fn next(&mut self) -> Option<PartitionVector> {
        if self.done {
            return None;
        }
        match self.current.as_mut() {
            None => self.current = Some(Self::first(self.k)),
            Some(v) => {
                if !Self::advance(self.k, v) {
                    self.done = true;
                    return None;
                }
            }
        }
        let v = self.current.clone().expect("set above");
        Some(PartitionVector { multiplicities: v })
    }
}

/// `Σ_λ term(λ)/(∏ n_j!·j^{n_j})` over partitions of `k`, i.e.
/// `(1/k!) Σ_{σ∈S_k} term(type σ)`. Class sizes are exact integers while
/// `k!` fits in 128 bits; the sum is divided by `k!` once at the end.
pub(crate) fn class_weighted_sum<T: Field>(k: usize, mut term: impl FnMut(&PartitionVector) -> T) -> T {
    match factorial_u128(k) {
        Some(kf) if k <= EXACT_FACTORIAL_LIMIT => {
            let mut acc = T::zero();
            for lambda in partitions(k) {
                let size = lambda.class_size().expect("k! fits");
                acc = acc + lift::<T>(size) * term(&lambda);
            }
            acc / lift::<T>(kf)
        }
        _ => partitions(k).fold(T::zero(), |acc, lambda| {
            let t = term(&lambda);
            acc + lambda.inverse_centralizer::<T>() * t
        }),
    }
}

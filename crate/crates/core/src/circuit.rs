//! Hadamard-test circuit for the partial-transpose moments.
//!
//! The `k`-fold tensor power is laid out with interleaved registers
//! `A₁B₁A₂B₂…A_kB_k`. The cyclic permutation `σ = (k k−1 ⋯ 1)` acts on the A
//! registers and `σ⁻¹` on the B registers; both are applied as index maps.

use num_complex::Complex;
use num_traits::{One, Zero};
use rand::distr::{Bernoulli, Distribution};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Bipartition, ComplexMatrix, DensityMatrix};
use crate::scalar::Real;

/// Largest operator dimension handled by the simulator.
pub const MAX_CIRCUIT_DIM: usize = 4096;

fn checked_power(base: usize, k: usize) -> Option<usize> {
    (0..k).try_fold(1usize, |acc, _| acc.checked_mul(base).filter(|&v| v <= MAX_CIRCUIT_DIM))
}

/// Cyclic shift of `k` tensor factors of dimension `local_dim`:
/// `|i_1 i_2 … i_k⟩ ↦ |i_2 … i_k i_1⟩`, with factor 1 most significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationOperator {
    k: usize,
    local_dim: usize,
    map: Vec<usize>,
}

impl PermutationOperator {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn local_dim(&self) -> usize {
        self.local_dim
    }

    pub fn dim(&self) -> usize {
        self.map.len()
    }

    /// Basis index of the image of basis state `x`.
    pub fn image(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Self { k: self.k, local_dim: self.local_dim, map: inv }
    }

    /// `self ∘ other` as index maps.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(format!("{} vs {}", self.dim(), other.dim())));
        }
        Ok(Self {
            k: self.k,
            local_dim: self.local_dim,
            map: other.map.iter().map(|&y| self.map[y]).collect(),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(x, &y)| x == y)
    }

    /// Dense 0/1 matrix with `M[image(x), x] = 1`.
    pub fn to_matrix<T: Real>(&self) -> ComplexMatrix<T> {
        let mut m = ComplexMatrix::zeros(self.dim(), self.dim());
        for (x, &y) in self.map.iter().enumerate() {
            m[(y, x)] = Complex::one();
        }
        m
    }
}

/// Matrix representation of `σ = (k k−1 ⋯ 1)` on `(C^local_dim)^{⊗k}`.
pub fn cyclic_perm_operator(k: usize, local_dim: usize) -> Result<PermutationOperator> {
    if k == 0 || local_dim == 0 {
        return Err(Error::InvalidArgument("cycle length and local dimension must be positive".into()));
    }
    let dim = checked_power(local_dim, k)
        .ok_or_else(|| Error::SizeGuard(format!("{local_dim}^{k} exceeds {MAX_CIRCUIT_DIM}")))?;
    let lead = dim / local_dim;
    // moving the leading digit to the end
    let map = (0..dim).map(|x| (x % lead) * local_dim + x / lead).collect();
    Ok(PermutationOperator { k, local_dim, map })
}

fn register_guard(partition: Bipartition, k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidArgument("moment order must be at least 1".into()));
    }
    checked_power(partition.dim(), k).map(|_| ()).ok_or_else(|| {
        Error::SizeGuard(format!(
            "({}·{})^{k} exceeds the circuit limit {MAX_CIRCUIT_DIM}",
            partition.dim_a, partition.dim_b
        ))
    })
}

/// Odometer over `k` digits in base `base`.
fn advance(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// `tr[Π X]` for `X = ρ^{⊗k}` and `Π` shifting A registers by `shift_a` and B
/// registers by `shift_b` positions. `tr[ΠX] = Σ_x X_{π⁻¹(x), x}`.
fn shifted_trace<T: Real>(rho: &DensityMatrix<T>, k: usize, shift_a: usize, shift_b: usize) -> Complex<T> {
    let partition = rho.partition();
    let m = rho.matrix();
    let (da, db) = (partition.dim_a, partition.dim_b);
    let mut a = vec![0usize; k];
    let mut total = Complex::zero();
    loop {
        let mut b = vec![0usize; k];
        loop {
            let mut term = Complex::one();
            for r in 0..k {
                let row = partition.index(a[(r + shift_a) % k], b[(r + shift_b) % k]);
                term = term * m[(row, partition.index(a[r], b[r]))];
                if term.is_zero() {
                    break;
                }
            }
            total = total + term;
            if !advance(&mut b, db) {
                break;
            }
        }
        if !advance(&mut a, da) {
            break;
        }
    }
    total
}

/// `tr[(σ_k ⊗ σ_k⁻¹) ρ^{⊗k}]` as a complex number.
pub fn perm_moment_trace_complex<T: Real>(rho: &DensityMatrix<T>, k: usize) -> Result<Complex<T>> {
    register_guard(rho.partition(), k)?;
    // π⁻¹ sends the A digits to (a_k, a_1, …) and the B digits to (b_2, …, b_1)
    Ok(shifted_trace(rho, k, k - 1, 1 % k))
}

/// Real part of `tr[(σ_k ⊗ σ_k⁻¹) ρ^{⊗k}]`.
pub fn perm_moment_trace<T: Real>(rho: &DensityMatrix<T>, k: usize) -> Result<T> {
    perm_moment_trace_complex(rho, k).map(|z| z.re)
}

/// Ancilla outcome probabilities `(P(0), P(1))` of the controlled-Π Hadamard
/// test, from the projectors `(2 ± Π ± Π†)/4`.
pub fn hadamard_test_probabilities<T: Real>(rho: &DensityMatrix<T>, k: usize) -> Result<(T, T)> {
    register_guard(rho.partition(), k)?;
    let forward = shifted_trace(rho, k, k - 1, 1 % k);
    let backward = shifted_trace(rho, k, 1 % k, k - 1);
    let two = Complex::new(T::lit(2.0), T::zero());
    let quarter = T::lit(0.25);
    let p0 = (two + forward + backward).scale(quarter);
    let p1 = (two - forward - backward).scale(quarter);
    Ok((p0.re, p1.re))
}

/// `⟨Z⟩ = P(0) − P(1)` on the ancilla.
pub fn hadamard_test_expectation<T: Real>(rho: &DensityMatrix<T>, k: usize) -> Result<T> {
    let (p0, p1) = hadamard_test_probabilities(rho, k)?;
    Ok(p0 - p1)
}

/// Exact circuit expectation when each copy of the input is drawn from the
/// pure-state ensemble `{(w_i, ψ_i)}`: `Σ w_{i_1}⋯w_{i_k} Re⟨Ψ|Π|Ψ⟩` over
/// product inputs `Ψ = ψ_{i_1} ⊗ ⋯ ⊗ ψ_{i_k}`.
pub fn ensemble_expectation<T: Real>(
    ensemble: &[(T, Vec<Complex<T>>)],
    partition: Bipartition,
    k: usize,
) -> Result<T> {
    register_guard(partition, k)?;
    if ensemble.is_empty() {
        return Err(Error::InvalidArgument("empty ensemble".into()));
    }
    if let Some((_, v)) = ensemble.iter().find(|(_, v)| v.len() != partition.dim()) {
        return Err(Error::DimensionMismatch(format!(
            "ensemble vector of length {} for dimension {}",
            v.len(),
            partition.dim()
        )));
    }
    let (da, db) = (partition.dim_a, partition.dim_b);
    let mut choice = vec![0usize; k];
    let mut total = T::zero();
    loop {
        let weight = choice.iter().fold(T::one(), |acc, &i| acc * ensemble[i].0);
        let psi = |r: usize, a: usize, b: usize| ensemble[choice[r]].1[partition.index(a, b)];
        let mut overlap = Complex::zero();
        let mut a = vec![0usize; k];
        loop {
            let mut b = vec![0usize; k];
            loop {
                let mut bra: Complex<T> = Complex::one();
                let mut ket: Complex<T> = Complex::one();
                for r in 0..k {
                    bra = bra * psi(r, a[r], b[r]).conj();
                    ket = ket * psi(r, a[(r + k - 1) % k], b[(r + 1) % k]);
                }
                overlap = overlap + bra * ket;
                if !advance(&mut b, db) {
                    break;
                }
            }
            if !advance(&mut a, da) {
                break;
            }
        }
        total = total + weight * overlap.re;
        if !advance(&mut choice, ensemble.len()) {
            break;
        }
    }
    Ok(total)
}

/// Sampled estimate of one moment from repeated ancilla measurements.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShotEstimate {
    pub k: usize,
    pub mean: f64,
    pub shots: u64,
    pub std_error: f64,
    pub seed: u64,
}

impl ShotEstimate {
    /// Estimate from `plus` outcomes of `+1` among `shots` draws.
    pub fn from_counts(k: usize, plus: u64, shots: u64, seed: u64) -> Self {
        let n = shots as f64;
        let mean = (2.0 * plus as f64 - n) / n;
        let std_error = ((1.0 - mean * mean).max(0.0) / n).sqrt();
        Self { k, mean, shots, std_error, seed }
    }
}

/// Draw `shots` ±1 outcomes with `P(+1) = (1 + ⟨Z⟩)/2`.
pub fn sample_expectation(k: usize, expectation: f64, shots: u64, seed: u64) -> Result<ShotEstimate> {
    if shots == 0 {
        return Err(Error::InvalidArgument("shots must be at least 1".into()));
    }
    if !expectation.is_finite() {
        return Err(Error::InvalidArgument(format!("non-finite expectation {expectation}")));
    }
    let p = ((1.0 + expectation) / 2.0).clamp(0.0, 1.0);
    let coin = Bernoulli::new(p).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let plus = (0..shots).filter(|_| coin.sample(&mut rng)).count() as u64;
    Ok(ShotEstimate::from_counts(k, plus, shots, seed))
}

/// Simulated run of the circuit on `shots` fresh copies of `ρ^{⊗k}`.
pub fn sample_hadamard_test<T: Real>(rho: &DensityMatrix<T>, k: usize, shots: u64, seed: u64) -> Result<ShotEstimate> {
    let exact = hadamard_test_expectation(rho, k)?;
    let exact = exact
        .to_f64()
        .ok_or_else(|| Error::Consistency("expectation not representable as f64".into()))?;
    sample_expectation(k, exact, shots, seed)
}

/// Sampled moments `p_1..p_max_k`; order `k` uses seed `seed + k − 1`.
pub fn sample_moments<T: Real>(rho: &DensityMatrix<T>, max_k: usize, shots: u64, seed: u64) -> Result<Vec<ShotEstimate>> {
    (1..=max_k)
        .map(|k| sample_hadamard_test(rho, k, shots, seed.wrapping_add(k as u64 - 1)))
        .collect()
}

/// Largest `k` with `d^k` inside the circuit size guard.
pub fn max_circuit_order(partition: Bipartition) -> usize {
    (1..).take_while(|&k| checked_power(partition.dim(), k).is_some()).last().unwrap_or(0)
}

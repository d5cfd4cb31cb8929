//! State generators: Bell, GHZ, Werner, the butterfly metrology state, and
//! seeded random corpora. Qubit 1 is the most significant bit of the basis
//! index, so `|1011⟩` is basis state 11.

use num_complex::Complex;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::{expm_hermitian, kron, matmul, Bipartition, ComplexMatrix, DensityMatrix};
use crate::scalar::Real;

/// Largest dimension accepted by [`random_density`].
pub const MAX_RANDOM_DIM: usize = 64;

fn c<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::lit(re), T::lit(im))
}

pub fn pauli_x<T: Real>() -> ComplexMatrix<T> {
    ComplexMatrix::new(2, 2, vec![c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]).expect("2x2")
}

pub fn pauli_y<T: Real>() -> ComplexMatrix<T> {
    ComplexMatrix::new(2, 2, vec![c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]).expect("2x2")
}

pub fn pauli_z<T: Real>() -> ComplexMatrix<T> {
    ComplexMatrix::diag(&[T::one(), -T::one()])
}

/// `op` acting on qubit `site` (0-based) of an `n`-qubit register.
pub fn single_site<T: Real>(op: &ComplexMatrix<T>, site: usize, n: usize) -> ComplexMatrix<T> {
    (0..n).fold(ComplexMatrix::identity(1), |acc, q| {
        if q == site {
            kron(&acc, op)
        } else {
            kron(&acc, &ComplexMatrix::identity(2))
        }
    })
}

/// `op_a` on site `a` times `op_b` on site `b`.
pub fn two_site<T: Real>(op_a: &ComplexMatrix<T>, a: usize, op_b: &ComplexMatrix<T>, b: usize, n: usize) -> ComplexMatrix<T> {
    matmul(&single_site(op_a, a, n), &single_site(op_b, b, n)).expect("same dimension")
}

/// Computational basis vector for a bit string, first bit most significant.
pub fn basis_state<T: Real>(bits: &[u8]) -> Vec<Complex<T>> {
    let idx = bits.iter().fold(0usize, |acc, &b| (acc << 1) | (b as usize & 1));
    let mut v = vec![Complex::zero(); 1 << bits.len()];
    v[idx] = Complex::one();
    v
}

/// `(|00⟩ + |11⟩)/√2`.
pub fn bell_state<T: Real>() -> DensityMatrix<T> {
    ghz(2, 1).expect("valid GHZ parameters")
}

/// `(|0…0⟩ + |1…1⟩)/√2` on `n` qubits, split after the first `split` qubits.
pub fn ghz<T: Real>(n: usize, split: usize) -> Result<DensityMatrix<T>> {
    if n < 2 || split == 0 || split >= n {
        return Err(Error::InvalidArgument(format!("GHZ needs n >= 2 and 1 <= split < n, got n={n}, split={split}")));
    }
    if n > 12 {
        return Err(Error::SizeGuard(format!("GHZ on {n} qubits exceeds 12")));
    }
    let dim = 1usize << n;
    let half = Complex::new(T::lit(0.5), T::zero());
    let mut m = ComplexMatrix::zeros(dim, dim);
    for (r, c) in [(0, 0), (0, dim - 1), (dim - 1, 0), (dim - 1, dim - 1)] {
        m[(r, c)] = half;
    }
    DensityMatrix::new(m, Bipartition::new(1 << split, 1 << (n - split))?)
}

/// `p|Ψ⁻⟩⟨Ψ⁻| + (1 − p)·I/4`, `|Ψ⁻⟩ = (|01⟩ − |10⟩)/√2`.
pub fn werner<T: Real>(p: T) -> Result<DensityMatrix<T>> {
    if !(T::zero()..=T::one()).contains(&p) {
        return Err(Error::InvalidArgument(format!("Werner parameter {p} outside [0, 1]")));
    }
    let s = T::lit(0.5).sqrt();
    let singlet = [Complex::zero(), Complex::new(s, T::zero()), Complex::new(-s, T::zero()), Complex::zero()];
    let proj = ComplexMatrix::outer(&singlet).scale(Complex::new(p, T::zero()));
    let noise = ComplexMatrix::identity(4).scale(Complex::new((T::one() - p) / T::lit(4.0), T::zero()));
    DensityMatrix::new(proj.add(&noise)?, Bipartition::new(2, 2)?)
}

/// Parameters of `|ψ(t)⟩ = e^{iHt} e^{iVπ/4} e^{−iHt} |ψ(0)⟩` with
/// `H = −J Σ_{i<j} (a/r_ij)³ (X_iX_j + Y_iY_j)` and `V = Y_{v1}Y_{v2}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ButterflyParams<T> {
    pub coupling: T,
    pub spacing: T,
    pub positions: Vec<T>,
    pub t: T,
    pub initial_bits: Vec<u8>,
    /// 0-based qubit indices of the local `Y⊗Y` kick.
    pub v_sites: (usize, usize),
    /// Number of leading qubits in subsystem A.
    pub split: usize,
}

impl<T: Real> Default for ButterflyParams<T> {
    fn default() -> Self {
        Self {
            coupling: T::one(),
            spacing: T::one(),
            positions: (0..4).map(|i| T::lit(i as f64)).collect(),
            t: T::zero(),
            initial_bits: vec![1, 0, 1, 1],
            v_sites: (0, 1),
            split: 2,
        }
    }
}

impl<T: Real> ButterflyParams<T> {
    pub fn qubit_count(&self) -> usize {
        self.initial_bits.len()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.qubit_count();
        if n < 2 || n > 10 {
            return Err(Error::InvalidArgument(format!("butterfly state needs 2..=10 qubits, got {n}")));
        }
        if self.positions.len() != n {
            return Err(Error::InvalidArgument(format!(
                "{} positions for {n} qubits",
                self.positions.len()
            )));
        }
        if self.positions.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidArgument("positions must be strictly increasing".into()));
        }
        if self.initial_bits.iter().any(|&b| b > 1) {
            return Err(Error::InvalidArgument("initial bits must be 0 or 1".into()));
        }
        let (a, b) = self.v_sites;
        if a == b || a >= n || b >= n {
            return Err(Error::InvalidArgument(format!("invalid V sites ({a}, {b})")));
        }
        if self.split == 0 || self.split >= n {
            return Err(Error::InvalidArgument(format!("split {} outside 1..{n}", self.split)));
        }
        Ok(())
    }

    /// XY Hamiltonian.
    pub fn hamiltonian(&self) -> ComplexMatrix<T> {
        let n = self.qubit_count();
        let (x, y) = (pauli_x::<T>(), pauli_y::<T>());
        let mut h = ComplexMatrix::zeros(1 << n, 1 << n);
        for i in 0..n {
            for j in i + 1..n {
                let r = (self.positions[j] - self.positions[i]).abs();
                let strength = -self.coupling * (self.spacing / r).powi(3);
                let term = two_site(&x, i, &x, j, n).add(&two_site(&y, i, &y, j, n)).expect("same dimension");
                h = h.add(&term.scale(Complex::new(strength, T::zero()))).expect("same dimension");
            }
        }
        h
    }

    /// `Y_{v1} Y_{v2}`.
    pub fn kick(&self) -> ComplexMatrix<T> {
        let y = pauli_y::<T>();
        two_site(&y, self.v_sites.0, &y, self.v_sites.1, self.qubit_count())
    }
}

/// Pure state vector of the butterfly protocol.
pub fn butterfly_vector<T: Real>(params: &ButterflyParams<T>) -> Result<Vec<Complex<T>>> {
    params.validate()?;
    let h = params.hamiltonian();
    let forward = expm_hermitian(&h, Complex::new(T::zero(), -params.t))?;
    let backward = expm_hermitian(&h, Complex::new(T::zero(), params.t))?;
    let quarter_pi = T::lit(std::f64::consts::FRAC_PI_4);
    let kick = expm_hermitian(&params.kick(), Complex::new(T::zero(), quarter_pi))?;
    let psi0 = basis_state::<T>(&params.initial_bits);
    let v = forward.apply(&psi0)?;
    let v = kick.apply(&v)?;
    let mut v = backward.apply(&v)?;
    // unitary up to rounding; renormalise so the density check is tight
    let norm = v.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt();
    v.iter_mut().for_each(|z| *z = z.unscale(norm));
    Ok(v)
}

pub fn butterfly_state<T: Real>(params: &ButterflyParams<T>) -> Result<DensityMatrix<T>> {
    let v = butterfly_vector(params)?;
    let n = params.qubit_count();
    let partition = Bipartition::new(1 << params.split, 1 << (n - params.split))?;
    DensityMatrix::from_pure(&v, partition)
}

fn gaussian_matrix<T: Real>(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix<T> {
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex::new(T::lit(re), T::lit(im))
    })
}

fn normalized_gram<T: Real>(g: &ComplexMatrix<T>, partition: Bipartition) -> Result<DensityMatrix<T>> {
    let m = matmul(g, &g.adjoint())?;
    let tr = m.trace()?.re;
    DensityMatrix::new(m.scale(Complex::new(T::one() / tr, T::zero())), partition)
}

/// `G·G†/tr(G·G†)` for a seeded complex Gaussian `d×d` matrix `G`.
pub fn random_density<T: Real>(d_a: usize, d_b: usize, seed: u64) -> Result<DensityMatrix<T>> {
    random_density_with_rank(d_a, d_b, d_a * d_b, seed)
}

/// As [`random_density`] but with a `d×rank` Gaussian factor.
pub fn random_density_with_rank<T: Real>(d_a: usize, d_b: usize, rank: usize, seed: u64) -> Result<DensityMatrix<T>> {
    let partition = Bipartition::new(d_a, d_b)?;
    let d = partition.dim();
    if d > MAX_RANDOM_DIM {
        return Err(Error::SizeGuard(format!("random states limited to dimension {MAX_RANDOM_DIM}, got {d}")));
    }
    if rank == 0 || rank > d {
        return Err(Error::InvalidArgument(format!("rank {rank} outside 1..={d}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    normalized_gram(&gaussian_matrix(d, rank, &mut rng), partition)
}

/// Seeded random product state `ρ_A ⊗ ρ_B` (separable by construction).
pub fn random_product_density<T: Real>(d_a: usize, d_b: usize, seed: u64) -> Result<DensityMatrix<T>> {
    let a = random_density::<T>(d_a, 1, seed)?;
    let b = random_density::<T>(d_b, 1, seed.wrapping_add(0x9E37_79B9_7F4A_7C15))?;
    product_state(a.matrix(), b.matrix())
}

/// Seeded random Hermitian matrix with entries of order one.
pub fn random_hermitian<T: Real>(d: usize, seed: u64) -> ComplexMatrix<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = gaussian_matrix::<T>(d, d, &mut rng);
    g.add(&g.adjoint()).expect("square").scale(Complex::new(T::lit(0.5), T::zero()))
}

/// Normalised random pure state vector.
pub fn random_pure_vector<T: Real>(d: usize, rng: &mut ChaCha8Rng) -> Vec<Complex<T>> {
    let g = gaussian_matrix::<T>(d, 1, rng).into_vec();
    let norm = g.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt();
    g.into_iter().map(|z| z.unscale(norm)).collect()
}

/// `ρ_A ⊗ ρ_B` with the induced bipartition.
pub fn product_state<T: Real>(rho_a: &ComplexMatrix<T>, rho_b: &ComplexMatrix<T>) -> Result<DensityMatrix<T>> {
    let a = DensityMatrix::new(rho_a.clone(), Bipartition::new(rho_a.rows(), 1)?)
        .map_err(|e| Error::InvalidDensity(format!("first factor: {e}")))?;
    let b = DensityMatrix::new(rho_b.clone(), Bipartition::new(rho_b.rows(), 1)?)
        .map_err(|e| Error::InvalidDensity(format!("second factor: {e}")))?;
    DensityMatrix::new(kron(a.matrix(), b.matrix()), Bipartition::new(a.dim(), b.dim())?)
}

use num_complex::Complex;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::eigen::hermitian_eigenvalues;
use super::matrix::{matmul, ComplexMatrix};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Split of a composite index space into `H_A ⊗ H_B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bipartition {
    pub dim_a: usize,
    pub dim_b: usize,
}

impl Bipartition {
    pub fn new(dim_a: usize, dim_b: usize) -> Result<Self> {
        if dim_a == 0 || dim_b == 0 {
            return Err(Error::InvalidArgument(format!(
                "bipartition dimensions must be positive, got {dim_a}x{dim_b}"
            )));
        }
        Ok(Self { dim_a, dim_b })
    }

    pub fn dim(&self) -> usize {
        self.dim_a * self.dim_b
    }

    /// Composite index of `|i⟩ ⊗ |k⟩`.
    pub fn index(&self, i: usize, k: usize) -> usize {
        i * self.dim_b + k
    }

    /// Inverse of [`Bipartition::index`].
    pub fn split(&self, idx: usize) -> (usize, usize) {
        (idx / self.dim_b, idx % self.dim_b)
    }
}

/// Which tensor factor a partial transpose acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Subsystem {
    A,
    #[default]
    B,
}

/// Hermitian, unit-trace, positive semi-definite matrix with a bipartition.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T> {
    matrix: ComplexMatrix<T>,
    partition: Bipartition,
    hermitian_defect: T,
}

impl<T: Real> DensityMatrix<T> {
    /// Validates and stores `matrix`; the stored copy is exactly Hermitian.
    pub fn new(matrix: ComplexMatrix<T>, partition: Bipartition) -> Result<Self> {
        let n = matrix.require_square()?;
        if n != partition.dim() {
            return Err(Error::DimensionMismatch(format!(
                "matrix dimension {n} does not match bipartition {}x{}",
                partition.dim_a, partition.dim_b
            )));
        }
        let tol = T::validation_tol();
        let (sym, defect) = matrix.symmetrized()?;
        if defect > tol {
            return Err(Error::InvalidDensity(format!("not Hermitian (defect {defect:e})")));
        }
        let tr = sym.trace()?.re;
        if (tr - T::one()).abs() > tol {
            return Err(Error::InvalidDensity(format!("trace {tr} differs from 1")));
        }
        let min_eig = hermitian_eigenvalues(&sym)?.first().copied().unwrap_or_else(T::zero);
        if min_eig < -tol {
            return Err(Error::InvalidDensity(format!("negative eigenvalue {min_eig:e}")));
        }
        Ok(Self { matrix: sym, partition, hermitian_defect: defect })
    }

    /// `|ψ⟩⟨ψ|` for a unit vector.
    pub fn from_pure(state: &[Complex<T>], partition: Bipartition) -> Result<Self> {
        if state.len() != partition.dim() {
            return Err(Error::DimensionMismatch(format!(
                "state of length {} for bipartition {}x{}",
                state.len(),
                partition.dim_a,
                partition.dim_b
            )));
        }
        let norm = state.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt();
        if (norm - T::one()).abs() > T::validation_tol() {
            return Err(Error::InvalidDensity(format!("state norm {norm} differs from 1")));
        }
        Self::new(ComplexMatrix::outer(state), partition)
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    pub fn partition(&self) -> Bipartition {
        self.partition
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Hermiticity defect removed at construction.
    pub fn hermitian_defect(&self) -> T {
        self.hermitian_defect
    }

    /// `tr ρ²`.
    pub fn purity(&self) -> T {
        // tr(ρ²) = Σ |ρ_ij|² for Hermitian ρ
        self.matrix.as_slice().iter().fold(T::zero(), |acc, z| acc + z.norm_sqr())
    }

    /// Same matrix with a different split of the index space.
    pub fn with_partition(&self, partition: Bipartition) -> Result<Self> {
        if partition.dim() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "bipartition {}x{} for dimension {}",
                partition.dim_a,
                partition.dim_b,
                self.dim()
            )));
        }
        Ok(Self { partition, ..self.clone() })
    }

    pub fn into_matrix(self) -> ComplexMatrix<T> {
        self.matrix
    }

    /// `ρ²`, exposed for purity cross-checks.
    pub fn squared(&self) -> ComplexMatrix<T> {
        matmul(&self.matrix, &self.matrix).expect("square")
    }
}

/// Partial transpose of a density matrix.
pub fn partial_transpose<T: Real>(rho: &DensityMatrix<T>, which: Subsystem) -> ComplexMatrix<T> {
    partial_transpose_matrix(rho.matrix(), rho.partition(), which).expect("validated dimensions")
}

/// Partial transpose of any square matrix on `H_A ⊗ H_B`. This only permutes
/// entries, so applying it twice returns the input bit for bit.
pub fn partial_transpose_matrix<T: Real>(
    m: &ComplexMatrix<T>,
    partition: Bipartition,
    which: Subsystem,
) -> Result<ComplexMatrix<T>> {
    let n = m.require_square()?;
    if n != partition.dim() {
        return Err(Error::DimensionMismatch(format!(
            "matrix dimension {n} does not match bipartition {}x{}",
            partition.dim_a, partition.dim_b
        )));
    }
    Ok(ComplexMatrix::from_fn(n, n, |r, c| {
        let (i, k) = partition.split(r);
        let (j, l) = partition.split(c);
        match which {
            Subsystem::B => m[(partition.index(i, l), partition.index(j, k))],
            Subsystem::A => m[(partition.index(j, k), partition.index(i, l))],
        }
    }))
}

/// Reduced state on one factor (partial trace over the other).
pub fn partial_trace<T: Real>(rho: &DensityMatrix<T>, keep: Subsystem) -> ComplexMatrix<T> {
    let p = rho.partition();
    let m = rho.matrix();
    match keep {
        Subsystem::A => ComplexMatrix::from_fn(p.dim_a, p.dim_a, |i, j| {
            (0..p.dim_b).fold(Complex::zero(), |acc, k| acc + m[(p.index(i, k), p.index(j, k))])
        }),
        Subsystem::B => ComplexMatrix::from_fn(p.dim_b, p.dim_b, |k, l| {
            (0..p.dim_a).fold(Complex::zero(), |acc, i| acc + m[(p.index(i, k), p.index(i, l))])
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::kron;

    fn bell() -> DensityMatrix<f64> {
        let h = 0.5;
        let m = ComplexMatrix::from_real(
            4,
            4,
            &[h, 0., 0., h, 0., 0., 0., 0., 0., 0., 0., 0., h, 0., 0., h],
        )
        .unwrap();
        DensityMatrix::new(m, Bipartition::new(2, 2).unwrap()).unwrap()
    }

    #[test]
    fn bell_partial_transpose_moves_coherences() {
        let pt = partial_transpose(&bell(), Subsystem::B);
        let h = 0.5;
        let expected = ComplexMatrix::from_real(
            4,
            4,
            &[h, 0., 0., 0., 0., 0., h, 0., 0., h, 0., 0., 0., 0., 0., h],
        )
        .unwrap();
        assert_eq!(pt, expected);
        assert_eq!(partial_transpose(&bell(), Subsystem::A), expected);
    }

    #[test]
    fn product_state_transposes_second_factor() {
        let a = ComplexMatrix::new(
            2,
            2,
            vec![Complex::new(0.7, 0.), Complex::new(0.1, 0.2), Complex::new(0.1, -0.2), Complex::new(0.3, 0.)],
        )
        .unwrap();
        let b = ComplexMatrix::new(
            2,
            2,
            vec![Complex::new(0.4, 0.), Complex::new(0.0, 0.3), Complex::new(0.0, -0.3), Complex::new(0.6, 0.)],
        )
        .unwrap();
        let rho = DensityMatrix::new(kron(&a, &b), Bipartition::new(2, 2).unwrap()).unwrap();
        let pt = partial_transpose(&rho, Subsystem::B);
        assert!(pt.max_abs_diff(&kron(&a, &b.transpose())).unwrap() < 1e-15);
        assert!(hermitian_eigenvalues(&pt).unwrap()[0] > -1e-12);
    }

    #[test]
    fn rejects_invalid_density_matrices() {
        let p = Bipartition::new(2, 1).unwrap();
        let not_unit = ComplexMatrix::diag(&[1.0, 1.0]);
        assert!(matches!(DensityMatrix::new(not_unit, p), Err(Error::InvalidDensity(_))));
        let negative = ComplexMatrix::diag(&[1.5, -0.5]);
        assert!(matches!(DensityMatrix::new(negative, p), Err(Error::InvalidDensity(_))));
        let skew = ComplexMatrix::from_real(2, 2, &[0.5, 0.1, 0.0, 0.5]).unwrap();
        assert!(matches!(DensityMatrix::new(skew, p), Err(Error::InvalidDensity(_))));
        let ok = ComplexMatrix::diag(&[0.5, 0.5]);
        assert!(DensityMatrix::new(ok.clone(), Bipartition::new(2, 2).unwrap()).is_err());
        assert!(Bipartition::new(0, 2).is_err());
    }

    #[test]
    fn partial_trace_of_bell_is_maximally_mixed() {
        let ra = partial_trace(&bell(), Subsystem::A);
        assert!(ra.max_abs_diff(&ComplexMatrix::diag(&[0.5, 0.5])).unwrap() < 1e-15);
    }
}

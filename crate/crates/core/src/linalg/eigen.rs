//! Cyclic Jacobi eigensolver for small dense Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot entry and then applies
//! a real symmetric Schur rotation, so the whole iteration stays in complex
//! arithmetic without embedding into a real problem of twice the size. The
//! sweep order is fixed (row-major over the strict upper triangle), which
//! makes results bit-reproducible.

use num_complex::Complex;
use num_traits::Zero;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};
use crate::scalar::Real;

const MAX_SWEEPS: usize = 100;

/// Ascending eigenvalues with matching eigenvector columns.
#[derive(Debug, Clone)]
pub(crate) struct HermitianEigen<T> {
    pub values: Vec<T>,
    pub vectors: ComplexMatrix<T>,
}

fn hermitian_input_tol<T: Real>() -> T {
    T::lit(1e-8).max(T::validation_tol())
}

fn check_hermitian<T: Real>(m: &ComplexMatrix<T>) -> Result<()> {
    let defect = m.hermitian_defect()?;
    if defect > hermitian_input_tol::<T>() {
        return Err(Error::NotHermitian { defect: defect.to_f64().unwrap_or(f64::NAN) });
    }
    Ok(())
}

fn off_diagonal_norm<T: Real>(a: &ComplexMatrix<T>) -> T {
    let n = a.rows();
    let mut acc = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc = acc + a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

pub(crate) fn hermitian_eigen<T: Real>(m: &ComplexMatrix<T>) -> Result<HermitianEigen<T>> {
    check_hermitian(m)?;
    let (mut a, _) = m.symmetrized()?;
    let n = a.rows();
    let mut v = ComplexMatrix::identity(n);

    let threshold = T::jacobi_tol() * a.frobenius_norm();
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= threshold {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<T> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).unwrap_or(std::cmp::Ordering::Equal));
    let values = order.iter().map(|&i| diag[i]).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok(HermitianEigen { values, vectors })
}

fn rotate<T: Real>(a: &mut ComplexMatrix<T>, v: &mut ComplexMatrix<T>, p: usize, q: usize) {
    let g = a[(p, q)];
    let h = g.norm();
    if h <= T::min_positive_value() {
        return;
    }
    let phase = g.unscale(h);
    let cphase = phase.conj();
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let two = T::one() + T::one();
    let tau = (aqq - app) / (two * h);
    let t = if tau >= T::zero() {
        T::one() / (tau + T::one().hypot(tau))
    } else {
        -T::one() / (-tau + T::one().hypot(tau))
    };
    let c = T::one() / T::one().hypot(t);
    let s = t * c;
    let cc = Complex::new(c, T::zero());
    let sc = Complex::new(s, T::zero());
    let n = a.rows();

    // A ← A·W, V ← V·W with W = [[c, s], [−s·e^{−iφ}, c·e^{−iφ}]]
    for r in 0..n {
        let x = a[(r, p)];
        let y = a[(r, q)];
        a[(r, p)] = x * cc - y * sc * cphase;
        a[(r, q)] = x * sc + y * cc * cphase;
        let x = v[(r, p)];
        let y = v[(r, q)];
        v[(r, p)] = x * cc - y * sc * cphase;
        v[(r, q)] = x * sc + y * cc * cphase;
    }
    // A ← W†·A
    for r in 0..n {
        let x = a[(p, r)];
        let y = a[(q, r)];
        a[(p, r)] = x * cc - y * sc * phase;
        a[(q, r)] = x * sc + y * cc * phase;
    }
    a[(p, q)] = Complex::zero();
    a[(q, p)] = Complex::zero();
    a[(p, p)] = Complex::new(app - t * h, T::zero());
    a[(q, q)] = Complex::new(aqq + t * h, T::zero());
}

/// All eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues<T: Real>(m: &ComplexMatrix<T>) -> Result<Vec<T>> {
    Ok(hermitian_eigen(m)?.values)
}

/// `exp(scale·m)` for Hermitian `m`, through the eigendecomposition.
pub fn expm_hermitian<T: Real>(m: &ComplexMatrix<T>, scale: Complex<T>) -> Result<ComplexMatrix<T>> {
    let eig = hermitian_eigen(m)?;
    let n = m.rows();
    let factors: Vec<Complex<T>> = eig.values.iter().map(|&l| (scale * l).exp()).collect();
    let vecs = &eig.vectors;
    Ok(ComplexMatrix::from_fn(n, n, |i, j| {
        (0..n).fold(Complex::zero(), |acc, l| acc + vecs[(i, l)] * factors[l] * vecs[(j, l)].conj())
    }))
}

/// Number of eigenvalues above `threshold`.
pub fn numerical_rank<T: Real>(eigenvalues: &[T], threshold: T) -> usize {
    eigenvalues.iter().filter(|&&x| x > threshold).count()
}

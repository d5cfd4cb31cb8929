use std::ops::{Index, IndexMut};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Dense complex matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> ComplexMatrix<T> {
    /// Builds a matrix from row-major entries, rejecting wrong lengths and
    /// non-finite values.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex<T>>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidArgument("matrix entries must be finite".into()));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Complex::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Real matrix from row-major values.
    pub fn from_real(rows: usize, cols: usize, values: &[T]) -> Result<Self> {
        Self::new(rows, cols, values.iter().map(|&x| Complex::new(x, T::zero())).collect())
    }

    pub fn diag(values: &[T]) -> Self {
        let n = values.len();
        Self::from_fn(n, n, |i, j| if i == j { Complex::new(values[i], T::zero()) } else { Complex::zero() })
    }

    /// Outer product `|v⟩⟨v|`.
    pub fn outer(v: &[Complex<T>]) -> Self {
        let n = v.len();
        Self::from_fn(n, n, |i, j| v[i] * v[j].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub(crate) fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<Complex<T>> {
        self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn map(&self, f: impl Fn(Complex<T>) -> Complex<T>) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&z| f(z)).collect() }
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        self.map(|z| z * s)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex<T>, Complex<T>) -> Complex<T>) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    pub fn trace(&self) -> Result<Complex<T>> {
        let n = self.require_square()?;
        Ok((0..n).fold(Complex::zero(), |acc, i| acc + self[(i, i)]))
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, z| acc.max(z.norm()))
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        Ok(self.sub(other)?.max_abs())
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt()
    }

    /// `max |M − M†|` over entries.
    pub fn hermitian_defect(&self) -> Result<T> {
        let n = self.require_square()?;
        let mut defect = T::zero();
        for i in 0..n {
            for j in i..n {
                defect = defect.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        Ok(defect)
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        matches!(self.hermitian_defect(), Ok(d) if d <= tol)
    }

    /// `(M + M†)/2` together with the defect removed.
    pub fn symmetrized(&self) -> Result<(Self, T)> {
        let defect = self.hermitian_defect()?;
        let half = T::lit(0.5);
        let n = self.rows;
        let m = Self::from_fn(n, n, |i, j| (self[(i, j)] + self[(j, i)].conj()).scale(half));
        Ok((m, defect))
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for a matrix with {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                row.iter().zip(v).fold(Complex::zero(), |acc, (&a, &b)| acc + a * b)
            })
            .collect())
    }
}

impl<T> Index<(usize, usize)> for ComplexMatrix<T> {
    type Output = Complex<T>;

    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for ComplexMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.cols + j]
    }
}

/// Standard matrix product.
pub fn matmul<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut out = ComplexMatrix::zeros(a.rows, b.cols);
    for i in 0..a.rows {
        for l in 0..a.cols {
            let x = a[(i, l)];
            if x.is_zero() {
                continue;
            }
            let brow = &b.data[l * b.cols..(l + 1) * b.cols];
            let orow = &mut out.data[i * b.cols..(i + 1) * b.cols];
            for (o, &y) in orow.iter_mut().zip(brow) {
                *o = *o + x * y;
            }
        }
    }
    Ok(out)
}

/// Kronecker product; composite index `(i, k) ↦ i·b.rows + k`.
pub fn kron<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    let (p, q) = (b.rows, b.cols);
    ComplexMatrix::from_fn(a.rows * p, a.cols * q, |r, c| a[(r / p, c / q)] * b[(r % p, c % q)])
}

/// Kronecker product of two vectors.
pub fn kron_vec<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Vec<Complex<T>> {
    a.iter().flat_map(|&x| b.iter().map(move |&y| x * y)).collect()
}

/// `tr(m^k)` for `k ≥ 1`.
pub fn trace_of_power<T: Real>(m: &ComplexMatrix<T>, k: usize) -> Result<Complex<T>> {
    if k == 0 {
        return Err(Error::InvalidArgument("trace_of_power needs k >= 1".into()));
    }
    Ok(traces_of_powers(m, k)?[k - 1])
}

/// `[tr(m), tr(m²), …, tr(m^k_max)]`.
pub fn traces_of_powers<T: Real>(m: &ComplexMatrix<T>, k_max: usize) -> Result<Vec<Complex<T>>> {
    let n = m.require_square()?;
    let mut out = Vec::with_capacity(k_max);
    let mut power = m.clone();
    for k in 1..=k_max {
        if k > 1 {
            power = matmul(&power, m)?;
        }
        out.push((0..n).fold(Complex::zero(), |acc, i| acc + power[(i, i)]));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn new_rejects_bad_length_and_nan() {
        assert!(ComplexMatrix::<f64>::new(2, 2, vec![c(0., 0.); 3]).is_err());
        assert!(ComplexMatrix::<f64>::new(1, 1, vec![c(f64::NAN, 0.)]).is_err());
        assert!(ComplexMatrix::<f64>::new(1, 1, vec![c(0., f64::INFINITY)]).is_err());
    }

    #[test]
    fn matmul_identity_and_ones() {
        let m = ComplexMatrix::new(2, 2, vec![c(1., 2.), c(-1., 0.), c(0.5, 0.), c(0., -3.)]).unwrap();
        let id = ComplexMatrix::identity(2);
        assert_eq!(matmul(&id, &m).unwrap(), m);
        let ones = ComplexMatrix::from_real(2, 2, &[1., 1., 1., 1.]).unwrap();
        let twos = ComplexMatrix::from_real(2, 2, &[2., 2., 2., 2.]).unwrap();
        assert_eq!(matmul(&ones, &ones).unwrap(), twos);
    }

    #[test]
    fn matmul_rejects_mismatch() {
        let a = ComplexMatrix::<f64>::zeros(2, 3);
        assert!(matches!(matmul(&a, &a), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn kron_of_diagonals() {
        let a = ComplexMatrix::diag(&[1., 2.]);
        let b = ComplexMatrix::diag(&[3., 4.]);
        assert_eq!(kron(&a, &b), ComplexMatrix::diag(&[3., 4., 6., 8.]));
        let i2 = ComplexMatrix::<f64>::identity(2);
        assert_eq!(kron(&i2, &i2), ComplexMatrix::identity(4));
    }

    #[test]
    fn trace_of_power_identity() {
        let id = ComplexMatrix::<f64>::identity(4);
        for k in 1..6 {
            assert_eq!(trace_of_power(&id, k).unwrap(), c(4., 0.));
        }
        assert!(trace_of_power(&id, 0).is_err());
        assert!(matches!(
            trace_of_power(&ComplexMatrix::<f64>::zeros(2, 3), 1),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn symmetrize_reports_defect() {
        let m = ComplexMatrix::new(2, 2, vec![c(1., 0.), c(0., 1.), c(0., 0.), c(2., 0.)]).unwrap();
        let (h, defect) = m.symmetrized().unwrap();
        assert!((defect - 1.0).abs() < 1e-15);
        assert_eq!(h.hermitian_defect().unwrap(), 0.0);
    }
}

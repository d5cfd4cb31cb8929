//! Truncated formal power series, stored as ascending coefficient vectors.

use num_traits::Num;

use crate::scalar::{lift, Field};

/// Cauchy product of `a` and `b`, keeping degrees `0..=degree`.
pub fn cauchy_product<T: Num + Clone>(a: &[T], b: &[T], degree: usize) -> Vec<T> {
    let mut out = vec![T::zero(); degree + 1];
    for (i, x) in a.iter().enumerate().take(degree + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(degree + 1 - i) {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    out
}

/// `exp(a(u))` up to `degree`, for a series with zero constant term, via
/// `m·b_m = Σ_{j=1..m} j·a_j·b_{m−j}`.
///
/// # Panics
/// If `a[0]` is nonzero.
pub fn series_exp<T: Field>(a: &[T], degree: usize) -> Vec<T> {
    assert!(a.first().is_none_or(|c| c.is_zero()), "series_exp needs a zero constant term");
    let coeff = |j: usize| a.get(j).cloned().unwrap_or_else(T::zero);
    let mut b = Vec::with_capacity(degree + 1);
    b.push(T::one());
    for m in 1..=degree {
        let mut acc = T::zero();
        for j in 1..=m {
            acc = acc + lift::<T>(j as u128) * coeff(j) * b[m - j].clone();
        }
        b.push(acc / lift::<T>(m as u128));
    }
    b
}

/// Evaluates a polynomial (ascending coefficients) at `x`.
pub fn eval<T: Num + Clone>(coeffs: &[T], x: &T) -> T {
    coeffs.iter().rev().fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::exact;

    #[test]
    fn product_truncates() {
        // (1 + u)^2 = 1 + 2u + u^2, truncated at degree 1
        assert_eq!(cauchy_product(&[1, 1], &[1, 1], 1), vec![1, 2]);
        assert_eq!(cauchy_product(&[1, 1], &[1, 1], 3), vec![1, 2, 1, 0]);
    }

    #[test]
    fn exp_of_linear_is_exponential_series() {
        let b = series_exp(&[exact(0, 1), exact(1, 1)], 5);
        let expected = [1, 1, 2, 6, 24, 120].map(|d| exact(1, d));
        assert_eq!(b, expected.to_vec());
    }

    #[test]
    fn exp_of_log_one_plus_u() {
        // log(1+u) = u - u^2/2 + u^3/3 - ...
        let log: Vec<f64> = (0..8).map(|k| if k == 0 { 0.0 } else { (-1f64).powi(k + 1) / k as f64 }).collect();
        let b = series_exp(&log, 7);
        assert!((b[0] - 1.0).abs() < 1e-15 && (b[1] - 1.0).abs() < 1e-15);
        assert!(b[2..].iter().all(|c| c.abs() < 1e-14), "{b:?}");
    }
}

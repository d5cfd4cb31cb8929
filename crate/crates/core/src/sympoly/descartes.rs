use crate::error::{Error, Result};
use crate::scalar::Field;

/// Real polynomial with ascending coefficients `a_0, …, a_n`, `a_n ≠ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Field> Polynomial<T> {
    /// Trims high-degree zeros; the zero polynomial is rejected.
    pub fn new(mut coeffs: Vec<T>) -> Result<Self> {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("zero polynomial has no sign pattern".into()));
        }
        Ok(Self { coeffs })
    }

    /// Monic polynomial `∏ (x − r)`.
    pub fn from_roots(roots: &[T]) -> Self {
        Self { coeffs: super::elementary::vieta_coefficients(roots) }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }
}

/// Upper bound on the number of positive roots: sign changes between
/// consecutive nonzero coefficients. Low-order zero coefficients (factors of
/// `x`) do not affect positive roots and are dropped first.
pub fn descartes_bound<T: Field>(p: &Polynomial<T>) -> usize {
    let mut changes = 0;
    let mut last_positive: Option<bool> = None;
    for c in p.coeffs().iter().skip_while(|c| c.is_zero()) {
        if c.is_zero() {
            continue;
        }
        let positive = c.is_positive();
        if last_positive.is_some_and(|lp| lp != positive) {
            changes += 1;
        }
        last_positive = Some(positive);
    }
    changes
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn textbook_examples() {
        let p = Polynomial::new(vec![2.0, -3.0, 1.0]).unwrap();
        assert_eq!(descartes_bound(&p), 2);
        let q = Polynomial::new(vec![1.0, 1.0, 1.0]).unwrap();
        assert_eq!(descartes_bound(&q), 0);
    }

    #[test]
    fn zeros_are_skipped_and_trimmed() {
        // x^4 - x^2 (+ trailing zeros) → one change after dividing out x^2
        let p = Polynomial::new(vec![0.0, 0.0, -1.0, 0.0, 1.0, 0.0, 0.0]).unwrap();
        assert_eq!(p.degree(), 4);
        assert_eq!(descartes_bound(&p), 1);
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert!(Polynomial::<f64>::new(vec![0.0, 0.0]).is_err());
        assert!(Polynomial::<f64>::new(vec![]).is_err());
    }

    #[test]
    fn from_roots_evaluates_to_zero_at_roots() {
        let p = Polynomial::<f64>::from_roots(&[1.0, -2.0, 0.5]);
        for r in [1.0, -2.0, 0.5] {
            assert!(p.eval(&r).abs() < 1e-12);
        }
    }
}

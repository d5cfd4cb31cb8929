//! Scalar abstractions.
//!
//! The combinatorial layer (partitions, symmetric polynomials, power series)
//! only needs field arithmetic and works over `f32`, `f64` and exact
//! rationals. Everything touching complex matrices additionally needs the
//! transcendental functions of [`num_traits::Float`].

use std::fmt::{Debug, Display, LowerExp};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Float, FromPrimitive, Num, Signed};

/// Field-like scalar: exact or floating point.
pub trait Field:
    Num + Signed + FromPrimitive + Clone + PartialOrd + Debug + Send + Sync + 'static
{
}

impl Field for f32 {}
impl Field for f64 {}
impl Field for Ratio<i64> {}
impl Field for Ratio<i128> {}
impl Field for BigRational {}

/// Floating point scalar used by the linear algebra and physics layers.
pub trait Real: Field + Float + Default + Display + LowerExp {
    /// Tolerance for structural checks on density matrices
    /// (Hermiticity, unit trace, positivity).
    fn validation_tol() -> Self;

    /// Off-diagonal threshold at which the Jacobi sweeps stop, relative to
    /// the Frobenius norm of the input.
    fn jacobi_tol() -> Self;

    /// Lossy conversion from `f64`, used for literals and tolerances.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }
}

impl Real for f64 {
    fn validation_tol() -> Self {
        1e-10
    }

    fn jacobi_tol() -> Self {
        1e-12
    }
}

impl Real for f32 {
    fn validation_tol() -> Self {
        1e-4
    }

    fn jacobi_tol() -> Self {
        1e-6
    }
}

/// Converts an exact unsigned integer into any field.
///
/// Falls back to binary splitting for scalars (small rationals) whose
/// `FromPrimitive` implementation refuses large inputs.
pub fn lift<T: Field>(n: u128) -> T {
    if let Some(x) = T::from_u128(n) {
        return x;
    }
    let two = T::one() + T::one();
    let half: T = lift(n / 2);
    let rem = if n % 2 == 1 { T::one() } else { T::zero() };
    two * half + rem
}

/// Converts a signed integer into any field.
pub fn lift_signed<T: Field>(n: i128) -> T {
    let mag: T = lift(n.unsigned_abs());
    if n < 0 {
        -mag
    } else {
        mag
    }
}

/// `x^n` by repeated squaring, for fields without `powi`.
pub fn pow<T: Field>(x: &T, mut n: usize) -> T {
    let mut base = x.clone();
    let mut acc = T::one();
    while n > 0 {
        if n & 1 == 1 {
            acc = acc * base.clone();
        }
        n >>= 1;
        if n > 0 {
            base = base.clone() * base;
        }
    }
    acc
}

/// Exact rational type used in tests and for exact evaluations.
pub type Exact = BigRational;

/// Builds an exact rational `num / den`.
pub fn exact(num: i64, den: i64) -> Exact {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lift_handles_large_values_in_small_rationals() {
        let big = 20u128.pow(14);
        let x: Ratio<i128> = lift(big);
        assert_eq!(x, Ratio::from_integer(big as i128));
        let y: f64 = lift(1u128 << 100);
        assert_eq!(y, 2f64.powi(100));
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let x = exact(-3, 2);
        assert_eq!(pow(&x, 0), exact(1, 1));
        assert_eq!(pow(&x, 3), exact(-27, 8));
        assert_eq!(pow(&2.0f64, 10), 1024.0);
    }
}

//! Moment-based PPT entanglement tests.
//!
//! The partial transpose `ρ^Γ` of a bipartite density matrix is positive
//! semi-definite iff every elementary symmetric polynomial of its spectrum is
//! nonnegative. Those polynomials are computed here from the moments
//! `p_k = tr((ρ^Γ)^k)` alone, through three independent routes (Newton's
//! recursion, the cycle-index partition sum, and the Euler product of the
//! graph zeta function), plus an eigenvalue oracle and a simulated
//! Hadamard-test circuit for the moments.
//!
//! Core routines are generic over the scalar type; the aliases at the crate
//! root fix it to `f64`.

pub mod circuit;
pub mod error;
pub mod graph;
pub mod linalg;
pub mod ppt;
pub mod scalar;
pub mod series;
pub mod states;
pub mod sympoly;

pub use error::{Error, Result};
pub use scalar::{Field, Real};

pub type ComplexMatrix = linalg::ComplexMatrix<f64>;
pub type DensityMatrix = linalg::DensityMatrix<f64>;
pub type MomentVector = sympoly::MomentVector<f64>;
pub type FSequence = ppt::FSequence<f64>;
pub type TestReport = ppt::TestReport<f64>;
pub type WeightedDigraph = graph::WeightedDigraph<f64>;
pub type PrimeClass = graph::PrimeClass<f64>;
pub type ButterflyParams = states::ButterflyParams<f64>;

pub use linalg::{Bipartition, Subsystem};

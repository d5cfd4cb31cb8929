//! Small dense complex linear algebra.
//!
//! Composite indices follow `|i⟩ ⊗ |k⟩ ↦ i·dim_b + k` everywhere.

mod density;
mod eigen;
mod json;
mod matrix;

pub use density::{partial_trace, partial_transpose, partial_transpose_matrix, Bipartition, DensityMatrix, Subsystem};
pub use eigen::{expm_hermitian, hermitian_eigenvalues, numerical_rank};
pub use json::{DensityJson, MatrixJson};
pub use matrix::{kron, kron_vec, matmul, trace_of_power, traces_of_powers, ComplexMatrix};

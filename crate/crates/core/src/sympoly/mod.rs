//! Integer partitions, elementary symmetric polynomials (direct, Newton,
//! partition-sum closed form), Bell polynomials, cycle indices of `S_k` and
//! `A_k`, and Descartes' sign bound.
//!
//! Everything here is generic over [`Field`](crate::scalar::Field), so the
//! same code runs on `f64` and on exact rationals.

mod cycle_index;
mod descartes;
mod elementary;
mod partitions;

pub use cycle_index::{
    bell_polynomial, cycle_index_a, cycle_index_s, cycle_type, even_odd_split, factorial, for_each_permutation,
    MAX_ENUMERATION_K,
};
pub use descartes::{descartes_bound, Polynomial};
pub use elementary::{
    elementary_closed_form, elementary_direct, elementary_from_roots, newton_elementary, vieta_coefficients,
    MomentVector,
};
pub use partitions::{factorial_u128, partitions, PartitionVector, Partitions, EXACT_FACTORIAL_LIMIT};

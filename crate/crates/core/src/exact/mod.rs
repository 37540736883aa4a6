//! Exact rational linear algebra.

mod echelon;
mod matrix;
mod rational;
mod subspace;

pub use echelon::{kernel_from_rref, sparse_kernel, RowEchelon};
pub use matrix::{add_vec, axpy, is_zero_vec, scale_vec, sub_vec, unit_vec, zero_vec, Matrix, SparseVec, Vector};
pub use rational::Rational;
pub use subspace::{kernel, rank, solve, FixedBasis, Subspace};

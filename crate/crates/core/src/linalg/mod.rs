//! Exact linear algebra over the rationals: scalars, sparse vectors, matrices,
//! and canonical subspaces with the lattice operations (sum, intersection,
//! quotient dimension).

mod echelon;
mod matrix;
mod scalar;
mod sparse;
mod subspace;

pub use echelon::Echelon;
pub use matrix::{rref, Matrix};
pub use scalar::{ParseScalarError, Scalar};
pub use sparse::{Accumulator, SparseVec};
pub use subspace::{apply_map, kernel, preimage, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("ambient dimensions differ: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("vector length {found} does not match ambient dimension {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("subspace is not contained in the enclosing space")]
    NotContained,
}

/// Convenience wrappers with the free-function names used across the crate.
pub fn subspace_sum(u: &Subspace, v: &Subspace) -> Result<Subspace, LinalgError> {
    u.sum(v)
}

pub fn subspace_intersect(u: &Subspace, v: &Subspace) -> Result<Subspace, LinalgError> {
    u.intersect(v)
}

pub fn subspace_member(u: &Subspace, v: &[Scalar]) -> Result<bool, LinalgError> {
    u.member(v)
}

pub fn quotient_dim(u: &Subspace, v: &Subspace) -> Result<usize, LinalgError> {
    u.quotient_dim(v)
}

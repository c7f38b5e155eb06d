//! Exact computations with n-Lie (Filippov) algebras: free n-Lie algebras and
//! their graded dimensions, structure-constant algebras, c-nilpotent
//! multipliers, and the dimension bounds relating them.

pub mod algebra;
pub mod bounds;
pub mod count;
pub mod free;
pub mod linalg;
pub mod multiplier;

use thiserror::Error;

pub use linalg::{LinalgError, Scalar};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("resource guard: more than {limit} {what}")]
    ResourceGuard { what: &'static str, limit: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("algebra is not nilpotent")]
    NotNilpotent,
    #[error("subspaces belong to different algebras")]
    ParentMismatch,
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("{path}: {message}")]
    Parse { path: String, message: String },
    #[error("cache: {0}")]
    Cache(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

//! Exact linear algebra over the Gaussian rationals ℚ(i).
//!
//! Everything here is exact: there are no tolerances, and subspaces are
//! kept as projection matrices so that equality, containment and
//! orthogonality are plain matrix identities.

mod matrix;
mod scalar;
mod subspace;

pub use matrix::{inner, int_vector, orthogonal_basis, unit_vector, Matrix, Vector};
pub use scalar::{parse_rational, rational, Rational, Scalar};
pub use subspace::{sum_all, Subspace};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("subspaces live in different ambient spaces (ℂ^{left} vs ℂ^{right})")]
    AmbientMismatch { left: usize, right: usize },
    #[error("ambient dimension must be at least 1")]
    EmptyAmbient,
    #[error("matrix is not an orthogonal projection")]
    NotAProjection,
    #[error("a line needs a nonzero vector")]
    ZeroVector,
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
}

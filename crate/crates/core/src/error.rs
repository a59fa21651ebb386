use thiserror::Error;

use crate::congruence::Inertia;
use crate::scalar::Rational;

/// Errors raised by the library operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix has no entries")]
    EmptyMatrix,

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    /// Zero-based indices of the first offending pair `(row, col)`/`(col, row)`.
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("vector is zero")]
    ZeroVector,

    #[error("matrix is not positive definite (inertia {0})")]
    NotPositiveDefinite(Inertia),

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("precision must be positive, got {0}")]
    InvalidPrecision(Rational),

    #[error("dimension {n} exceeds the oracle size limit {limit}")]
    SizeLimitExceeded { n: usize, limit: usize },

    #[error("invalid interval: {lo} > {hi}")]
    InvalidInterval { lo: Rational, hi: Rational },

    #[error("polynomial is zero")]
    ZeroPolynomial,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

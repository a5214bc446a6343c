use thiserror::Error;

use crate::hypergroup::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input: wrong dimensions, out-of-range indices, bad tables.
    #[error("structural error: {0}")]
    Structural(String),
    /// Well-formed data that violates the hypergroup axioms.
    #[error("hypergroup axioms violated:\n{0}")]
    Invalid(ValidationReport),
    #[error("functions live on different hypergroups")]
    HostMismatch,
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("numerical degeneracy: {0}")]
    Degenerate(String),
    /// An exact computation met a value with no exact representation.
    #[error("not exactly representable: {0}")]
    NotExact(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("internal consistency error: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;

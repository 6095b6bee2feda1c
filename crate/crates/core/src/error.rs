use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("degenerate direction: the mode direction must be non-zero")]
    DegenerateDirection,

    #[error("invalid nu: {0}")]
    InvalidNu(String),

    #[error("norm is not representable in the chosen scalar type; use floating point")]
    IrrationalNorm,

    #[error("mode mismatch: {0}")]
    ModeMismatch(String),

    #[error("basis size {size} exceeds the configured cap {cap}")]
    ResourceLimit { size: usize, cap: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid pair: {0}")]
    InvalidPair(String),

    #[error("eigensolver failed to converge: {0}")]
    NoConvergence(String),
}

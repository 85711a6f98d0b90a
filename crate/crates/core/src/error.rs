use thiserror::Error;

/// Failures surfaced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input data (wrong lengths, unparsable numbers, bad JSON shape).
    #[error("format error: {0}")]
    Format(String),
    /// An operation was called outside its domain.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A port or variable index outside the valid range.
    #[error("index out of range: {0}")]
    OutOfRange(String),
    /// Input exceeds a hard size cap.
    #[error("too large: {0}")]
    TooLarge(String),
    /// An internal consistency check failed.
    #[error("internal invariant failed: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

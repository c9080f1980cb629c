use thiserror::Error;

/// Errors shared across the exact and numeric engines.
#[derive(Debug, Error, PartialEq)]
pub enum Error {
    #[error("unsupported exponent")]
    UnsupportedExponent,
    #[error("negative exponent on non-distinguished symbol {0}")]
    NegativeExponent(String),
    #[error("non-invertible image")]
    NonInvertibleImage,
    #[error("bracket domain")]
    BracketDomain,
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not nilpotent")]
    NotNilpotent,
    #[error("non-polynomial entries")]
    NonPolynomialEntries,
    #[error("empty diagonal")]
    EmptyDiagonal,
    #[error("invalid form spec: {0}")]
    InvalidSpec(String),
    #[error("not in upper half-plane")]
    NotInUpperHalfPlane,
    #[error("period mismatch")]
    PeriodMismatch,
    #[error("unsupported weight {0}")]
    UnsupportedWeight(i64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

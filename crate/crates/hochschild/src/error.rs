//! Engine-wide error type.

use thiserror::Error;

#[derive(Error, Debug)]
pub enum EngineError {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("inconsistent complex (image not contained in kernel): {0}")]
    InconsistentComplex(String),

    #[error("path algebra is infinite dimensional; unbounded cycle: {cycle}")]
    InfiniteDimensional { cycle: String },

    #[error("not a cocycle: nonzero coboundary at {witness}")]
    NotACocycle { witness: String },

    #[error("unsupported coefficients: {0}")]
    UnsupportedCoefficients(String),

    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),

    #[error("size cap exceeded: {0}")]
    CapExceeded(String),

    #[error("invalid bilinear form: {0}")]
    InvalidForm(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, EngineError>;

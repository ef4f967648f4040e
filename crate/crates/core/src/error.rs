use thiserror::Error;

/// Errors raised by the membership, construction and enumeration routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("spectrum of length {len} does not match dimensions {m}x{n}")]
    LengthMismatch { len: usize, m: usize, n: usize },

    #[error("operation requires at least {needed} entries, got {got}")]
    DimensionTooSmall { needed: usize, got: usize },

    #[error("expected dimensions {expected}, got {m}x{n}")]
    WrongDims {
        expected: &'static str,
        m: usize,
        n: usize,
    },

    #[error("vectors have different lengths ({0} vs {1})")]
    VectorLengths(usize, usize),

    #[error("matrix is not Hermitian (residual {0:e})")]
    NonHermitian(f64),

    #[error("invalid rank {rank} for a {dim}x{dim} matrix")]
    BadRank { rank: usize, dim: usize },

    #[error("spectrum is not admissible: {0}")]
    Inadmissible(String),

    #[error("bisection endpoints do not bracket a membership change")]
    NotBracketed,

    #[error("state spectrum has a negative entry {0}")]
    NegativeEntry(f64),

    #[error("malformed ordering: {0}")]
    MalformedOrder(String),

    #[error("{what} = {value} is outside the supported range {range}")]
    OutOfRange {
        what: &'static str,
        value: usize,
        range: &'static str,
    },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

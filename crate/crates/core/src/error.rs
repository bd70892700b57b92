use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic mismatch: {0} vs {1}")]
    PrimeMismatch(u64, u64),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("operation needs a single variable, got {0}")]
    NeedsOneVariable(usize),
    #[error("algebra mismatch: {0}")]
    SpecMismatch(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("subspace is not stable: {0}")]
    NotStable(String),
    #[error("missing base point {0}")]
    MissingBasePoint(usize),
    #[error("prime {0} is too small (need p >= 3)")]
    PrimeTooSmall(u64),
    #[error("embedding check failed: {0}")]
    Embedding(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

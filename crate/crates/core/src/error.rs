use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not integral: {0}")]
    NotIntegral(String),
    #[error("automorphism is not of finite order: {0}")]
    NotFiniteOrder(String),
    #[error("degenerate pairing: {0}")]
    Degenerate(String),
    #[error("not contained: {0}")]
    NotContained(String),
    #[error("quotient is infinite: {0}")]
    InfiniteQuotient(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("assumption violated: {0}")]
    AssumptionViolated(String),
    #[error("enumeration size {size} exceeds cap {cap}")]
    CapExceeded { size: String, cap: u64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("inconsistency: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

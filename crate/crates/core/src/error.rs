use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Inconsistent setup: mismatched slot spaces, non-involutive maps.
    #[error("configuration error: {0}")]
    Config(String),
    /// Input data violate a structural requirement (e.g. a non-Hermitian bracket).
    #[error("data error: {0}")]
    Data(String),
    /// Argument outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
}

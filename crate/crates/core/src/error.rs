use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid initial-rank encoding: {0}")]
    InvalidEncoding(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("parameters outside the principal domain: {0}")]
    Domain(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("not a successor in the composition poset: {0}")]
    Order(String),
    #[error("shape truncation exhausted: {0}")]
    Truncation(String),
    #[error("invalid sequence: {0}")]
    InvalidSequence(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

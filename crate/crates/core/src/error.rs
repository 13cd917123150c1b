use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("variable sets differ")]
    VariableSetMismatch,
    #[error("missing value for variable {0}")]
    MissingVariable(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("linear part is singular")]
    Singular,
    #[error("zero wedge vector")]
    ZeroVector,
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("assertion failed: {0}")]
    Assertion(String),
}

pub type Result<T> = std::result::Result<T, Error>;

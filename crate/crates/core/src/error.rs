use thiserror::Error;

/// Errors raised by the algebra kernel and the checks built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid variable context: {0}")]
    InvalidContext(String),
    #[error("variable name `{0}` uses the reserved `_` prefix")]
    ReservedName(String),
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("wrong arity: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("resource budget exceeded: {0}")]
    Budget(String),
    #[error("derivation is not certified locally nilpotent")]
    NotCertified,
    #[error("`{0}` is not in the kernel of the derivation")]
    NotInKernel(String),
    #[error("invalid slice: D(s) = {0}, expected 1")]
    InvalidSlice(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("input shape mismatch: expected length {expected}, got {got}")]
    InputShape { expected: usize, got: usize },

    #[error("index {index} out of range (valid range {min}..={max})")]
    IndexOutOfRange { index: usize, min: usize, max: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is singular over GF(2)")]
    SingularMatrix,

    #[error("polynomial degree {degree} exceeds the supported maximum {max}")]
    DegreeTooHigh { degree: usize, max: usize },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("gate {gate} is not in the core gate set; lower the circuit first")]
    MustLowerFirst { gate: String },

    #[error("invalid gate: {0}")]
    InvalidGate(String),

    #[error("resource budget exceeded: {0}")]
    ResourceBudget(String),

    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("wrong engine: {0}")]
    WrongEngine(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}

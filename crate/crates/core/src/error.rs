use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A caller broke an operation's precondition (bad index, wrong mode, ...).
    #[error("contract violation: {0}")]
    Contract(String),

    /// A preference profile failed validation.
    #[error("invalid preference profile: {0}")]
    Profile(String),

    /// Vector lengths that must agree did not.
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    Dimension { expected: usize, actual: usize },

    /// An optimizer or experiment configuration is unusable.
    #[error("configuration error: {0}")]
    Config(String),

    #[error("unknown problem `{0}` (expected UF1-UF10, MOP1-MOP7 or WFG1-WFG9)")]
    UnknownProblem(String),

    #[error("unknown algorithm `{0}` (valid: aoostm, amostm, stm, dra)")]
    UnknownAlgorithm(String),

    #[error("metric error: {0}")]
    Metric(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

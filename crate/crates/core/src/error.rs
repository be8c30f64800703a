use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("search budget exceeded")]
    BudgetExceeded,
    /// The solver does not handle this parameter regime and hands the
    /// instance back to the caller.
    #[error("delegated: {0}")]
    Delegated(String),
    /// The solver produced a certificate that failed verification.
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("io: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, message: message.into() }
    }

    /// True for outcomes that say nothing about the instance's answer.
    pub fn is_indefinite(&self) -> bool {
        matches!(self, Error::BudgetExceeded | Error::Delegated(_) | Error::Inconclusive(_))
    }
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

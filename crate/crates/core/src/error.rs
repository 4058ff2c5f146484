use thiserror::Error;

/// Every failure the library can report.
///
/// The variants line up with the command-line exit codes (see [`Error::exit_code`]).
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid value for `{key}`: {constraint}")]
    Validation { key: String, constraint: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("evaluation error: {0}")]
    Evaluation(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn validation(key: impl Into<String>, constraint: impl Into<String>) -> Self {
        Error::Validation {
            key: key.into(),
            constraint: constraint.into(),
        }
    }

    /// Process exit code used by the `mollifier` binary.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Io(_) => 2,
            Error::Validation { .. } | Error::LengthMismatch { .. } => 3,
            Error::Domain(_)
            | Error::Precondition(_)
            | Error::Evaluation(_)
            | Error::Resource(_)
            | Error::Unsupported(_) => 4,
            Error::Verification(_) => 5,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

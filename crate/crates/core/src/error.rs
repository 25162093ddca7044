use thiserror::Error;

use crate::validation::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input: wrong dimensions, missing entries, unknown names.
    #[error("structural error: {0}")]
    Structural(String),

    /// An argument outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Well-formed input that does not satisfy an operation's precondition.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// One or more model constraints are violated.
    #[error("validation failed:\n{0}")]
    Invalid(ValidationReport),

    /// Flows that contradict the guaranteed profile ordering or fall outside
    /// the profile band.
    #[error("inconsistent flows: {0}")]
    Inconsistency(String),

    #[error("unknown {kind} `{name}` (available: {available})")]
    UnknownStrategy {
        kind: &'static str,
        name: String,
        available: String,
    },

    #[error("parse error in {source_name}: {message}")]
    Parse {
        source_name: String,
        message: String,
    },

    #[error("instance generation failed: {0}")]
    Generation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    /// Process exit code for this failure: 2 parse, 3 validation, 4 computation.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 2,
            Error::Structural(_)
            | Error::Precondition(_)
            | Error::Invalid(_)
            | Error::UnknownStrategy { .. } => 3,
            Error::Domain(_) | Error::Inconsistency(_) | Error::Generation(_) => 4,
            Error::Io(_) => 1,
        }
    }
}

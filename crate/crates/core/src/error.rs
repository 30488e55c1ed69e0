use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A step that the underlying argument guarantees did not hold. This
    /// always indicates a bug; `witness` carries the offending data.
    #[error("invariant violated: {message} (witness: {witness})")]
    InvariantViolation { message: String, witness: String },

    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    #[error("generation failed after {attempts} attempts (best minimum degree {best_min_degree})")]
    GenerationFailed {
        attempts: usize,
        best_min_degree: usize,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}

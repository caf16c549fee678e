use thiserror::Error;

/// Errors raised by the algebraic layers and the instance loader.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid shuffle specification: {0}")]
    InvalidShuffle(String),

    #[error("chart mismatch: ({0}) vs ({1})")]
    ChartMismatch(String, String),

    #[error("argument is not in the abelian summand: {0}")]
    NotInAbelian(String),

    #[error("degree violation for {what}: expected {expected}, found {found}")]
    Degree {
        what: String,
        expected: String,
        found: String,
    },

    #[error("series did not terminate within {cap} brackets")]
    SeriesCap { cap: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("malformed input at {path}: {message}")]
    Parse { path: String, message: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Two routes that must agree did not. Always a bug.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            message: message.into(),
        }
    }
}

use thiserror::Error;

/// Errors shared by all pipeline stages.
#[derive(Error, Debug)]
pub enum Error {
    /// A text input could not be parsed. `row` is 1-based when known.
    #[error("parse error{}: {msg}", row.map(|r| format!(" at row {r}")).unwrap_or_default())]
    Parse { row: Option<usize>, msg: String },

    /// An input file or cloud contained no data.
    #[error("empty input")]
    EmptyInput,

    /// An argument violated a documented precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A linear solve or optimisation failed numerically.
    #[error("numerical error: {0}")]
    Numerical(String),

    /// A filtered complex violated monotonicity or structural invariants.
    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    /// A condition that the fixed templates make unreachable.
    #[error("internal error: {0}")]
    Internal(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn parse(row: usize, msg: impl Into<String>) -> Self {
        Error::Parse { row: Some(row), msg: msg.into() }
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

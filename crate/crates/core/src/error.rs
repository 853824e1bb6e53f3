use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument violated an operation's precondition.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// Malformed graph text. Lines are 1-based.
    #[error("graph parse error at line {line}: {message}")]
    GraphParse { line: usize, message: String },

    /// Malformed portable pixmap.
    #[error("pixmap parse error: {0}")]
    Pixmap(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

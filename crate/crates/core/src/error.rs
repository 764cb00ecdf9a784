use std::io;

/// Errors produced by the simulator, the metrics and the file readers.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("numeric error at step {step}: {detail}")]
    Numeric { step: usize, detail: String },

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("not found: {0}")]
    NotFound(String),

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}

use thiserror::Error;

/// Errors raised by the On_p engine and its front ends.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    /// The value would be at or above the first transcendental.
    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    /// A search or iteration cap was exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("zero has no multiplicative inverse or order")]
    ZeroInput,
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn syntax(pos: usize, msg: impl Into<String>) -> Self {
        Error::Syntax { pos, msg: msg.into() }
    }
}

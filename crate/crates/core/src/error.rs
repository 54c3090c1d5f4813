use thiserror::Error;

/// Errors raised by the library. Parse errors carry the 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown {kind} `{id}`")]
    UnknownId { kind: &'static str, id: String },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("size bound exceeded: {what} is {actual}, bound is {bound} (raise with {flag})")]
    SizeBound {
        what: &'static str,
        actual: usize,
        bound: usize,
        flag: &'static str,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("not applicable: {0}")]
    Inapplicable(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}

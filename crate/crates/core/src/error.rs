use thiserror::Error;

/// Errors raised by the algebra layer.
///
/// Each variant maps onto one of the CLI exit codes through [`Error::exit_code`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("unsupported presentation: {0}")]
    Unsupported(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    pub fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }

    /// Process exit code: 1 input, 2 resource cap, 3 unsupported presentation.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::RingMismatch(_) | Error::Input(_) => 1,
            Error::Resource(_) => 2,
            Error::Unsupported(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

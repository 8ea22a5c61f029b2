use thiserror::Error;

/// Errors raised across the crate.
///
/// Each variant maps onto a stable process exit code via [`Error::exit_code`].
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("index {index} out of range for {len} {what}")]
    Index {
        what: &'static str,
        index: usize,
        len: usize,
    },

    #[error("{what} of {requested} exceeds the cap of {cap}")]
    Capacity {
        what: &'static str,
        requested: usize,
        cap: usize,
    },

    #[error("unsupported gate for this simulation path: {0}")]
    UnsupportedGate(String),

    #[error("message length {0} bytes exceeds the SHA-256 limit")]
    MessageTooLong(u64),

    #[error("infeasible request: {0}")]
    Infeasible(String),

    #[error("assumption required: {0}")]
    AssumptionRequired(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    /// Process exit code for this error class. `2` is left to argument parsing.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Contract(_) => 3,
            Error::Index { .. } => 4,
            Error::Capacity { .. } => 5,
            Error::UnsupportedGate(_) => 6,
            Error::MessageTooLong(_) => 7,
            Error::Infeasible(_) => 8,
            Error::AssumptionRequired(_) => 9,
            Error::Parse { .. } => 10,
            Error::Io(_) => 11,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use thiserror::Error;

/// Errors raised by the library. Each variant maps to one CLI exit code.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MaqError {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("action is not free: {0}")]
    NotFree(String),

    #[error("condition 1 fails on {lower:?} < {upper:?}")]
    Condition1 { lower: Vec<usize>, upper: Vec<usize> },

    #[error("bound exceeded: {0}")]
    BoundExceeded(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl MaqError {
    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        MaqError::Parse { line, msg: msg.into() }
    }

    pub fn pre(msg: impl Into<String>) -> Self {
        MaqError::Precondition(msg.into())
    }

    pub fn bound(msg: impl Into<String>) -> Self {
        MaqError::BoundExceeded(msg.into())
    }

    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            MaqError::Parse { .. } => 2,
            MaqError::Precondition(_) | MaqError::NotFree(_) | MaqError::Condition1 { .. } => 3,
            MaqError::BoundExceeded(_) => 4,
            MaqError::Internal(_) => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, MaqError>;

//! Crate-wide error type.
//!
//! Law violations are *data* (see [`crate::report`]); errors are reserved for
//! malformed inputs, mismatched references and exhausted enumeration bounds.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An enumeration hit the configured size bound before exhausting itself.
    #[error("bound exhausted while {context} (limit {limit})")]
    BoundExhausted { context: String, limit: usize },

    #[error("unknown object `{0}`")]
    UnknownObject(String),

    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),

    #[error("base mismatch: {0}")]
    BaseMismatch(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn bound(context: impl Into<String>, limit: usize) -> Self {
        Error::BoundExhausted {
            context: context.into(),
            limit,
        }
    }

    pub fn malformed(msg: impl Into<String>) -> Self {
        Error::Malformed(msg.into())
    }

    /// Bound exhaustion must be distinguishable from negative verdicts.
    pub fn is_bound_exhausted(&self) -> bool {
        matches!(self, Error::BoundExhausted { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;

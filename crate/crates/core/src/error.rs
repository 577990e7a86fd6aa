use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error at row {row}: {message}")]
    Parse { row: usize, message: String },

    #[error("unsupported dimension {found}: {context} requires d = {expected}")]
    UnsupportedDimension {
        found: usize,
        expected: usize,
        context: &'static str,
    },

    #[error("subset is empty")]
    EmptySubset,

    #[error("dataset hash mismatch: artifact was built from {expected}, input hashes to {found}")]
    ProvenanceMismatch { expected: String, found: String },

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}

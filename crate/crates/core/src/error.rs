use std::io;

use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("numeric domain error: {0}")]
    Domain(String),
    #[error("singular matrix: {0}")]
    Singular(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("outside density support: {0}")]
    Support(String),
    #[error("raster format error at byte {offset}: {message}")]
    Format { offset: u64, message: String },
    #[error("estimation failure: {0}")]
    Estimation(String),
    #[error("detection failure: {0}")]
    Detection(String),
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn format(offset: u64, message: impl Into<String>) -> Self {
        Error::Format {
            offset,
            message: message.into(),
        }
    }
}

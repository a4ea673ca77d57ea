use thiserror::Error;

#[derive(Debug, Error)]
pub enum CbError {
    /// Invalid input: out-of-range weights, mismatched point counts, bad shapes.
    #[error("domain error: {0}")]
    Domain(String),

    /// A consistency check inside the library failed. Always a bug.
    #[error("internal error: {0}")]
    Internal(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, CbError>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(CbError::Domain(msg.into()))
}

pub(crate) fn internal<T>(msg: impl Into<String>) -> Result<T> {
    Err(CbError::Internal(msg.into()))
}

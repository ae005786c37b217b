use thiserror::Error;

/// Errors raised anywhere in the workbench.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("capacity exceeded for {what}: attempted {attempted}, limit {limit}")]
    Capacity {
        what: &'static str,
        attempted: usize,
        limit: usize,
    },

    #[error("unsupported code: {0}")]
    UnsupportedCode(String),

    /// The syndrome is not in the decode table: more errors than the code corrects.
    #[error("decode failure: syndrome {syndrome} has no correctable error pattern")]
    DecodeFailure { syndrome: String },

    /// A block holds amplitude outside the code space.
    #[error("leakage out of the code space: residual weight {residual:e}")]
    Leakage { residual: f64 },

    #[error("block decoding failed: {0}")]
    NotProduct(String),

    #[error("{gadget} aborted after {attempts} attempts")]
    GadgetAbort {
        gadget: &'static str,
        attempts: usize,
    },

    #[error("syndrome measurement did not settle within {rounds} rounds")]
    SyndromeFailure { rounds: usize },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}

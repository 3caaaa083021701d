use std::io;

use thiserror::Error;

/// Errors produced by the landscape pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("n = {n} exceeds the exhaustive cap of {cap}")]
    Capacity { n: u32, cap: u32 },

    #[error("degenerate fit: {0}")]
    DegenerateFit(&'static str),

    #[error("unsupported neighborhood model: {0}")]
    UnsupportedModel(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

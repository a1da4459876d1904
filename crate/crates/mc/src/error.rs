use thiserror::Error;

#[derive(Debug, Error)]
pub enum McError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("invalid body: {0}")]
    InvalidBody(String),
    #[error("translation window of half-width {given} is smaller than the required {required}")]
    WindowUnderflow { required: f64, given: f64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("sample {index} hit outside the sampling domain")]
    Domination { index: u64 },
    #[error("convex hull failed: {0}")]
    Hull(String),
    #[error("bad body description: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("worker pool: {0}")]
    Pool(String),
}

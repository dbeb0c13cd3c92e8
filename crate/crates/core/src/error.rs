use thiserror::Error;

/// Errors raised by the numerical routines and the experiment harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("radius must be positive, got {0}")]
    NonPositiveRadius(f64),
    #[error("fourier series has {0} nonzero modes, expected exactly one")]
    MultiMode(usize),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("point {0} lies outside the domain [0, 1]")]
    Domain(f64),
    #[error("history has {got} samples, need {need}")]
    InsufficientHistory { got: usize, need: usize },
    #[error("lattice signal period {0} is too short, need at least 4")]
    DegenerateSignal(usize),
    #[error("signal vanishes identically")]
    ZeroSignal,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("linear program failed: {0}")]
    Solver(String),
    #[error("config error at {path}: {message}")]
    Config { path: String, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

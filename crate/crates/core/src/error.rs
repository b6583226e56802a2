use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid size: {0}")]
    InvalidSize(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("degenerate fractional rotation (p = {p}): cot(alpha) is undefined")]
    DegenerateRotation { p: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("unknown channel preset `{0}`")]
    UnknownPreset(String),

    #[error("profile line {line}: {msg}")]
    Profile { line: usize, msg: String },

    #[error("beamformer error: {0}")]
    Beamformer(String),

    #[error("solver error: {0}")]
    Solver(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("instance too large for exhaustive search: {symbols} symbols (limit {limit})")]
    TooLarge { symbols: usize, limit: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

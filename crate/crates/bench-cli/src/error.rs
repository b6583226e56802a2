use thiserror::Error;

/// Failures of the benchmark runner, grouped by exit status.
#[derive(Debug, Error)]
pub enum BenchError {
    #[error("config parse error: {0}")]
    Parse(String),
    #[error("invalid value for `{field}`: {message}")]
    Validation { field: String, message: String },
    #[error("unknown preset `{0}`; run `mcwave presets` for the list")]
    UnknownPreset(String),
    #[error("simulation failed: {0}")]
    Simulation(#[from] mcwave::Error),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl BenchError {
    /// Process exit status: 2 for configuration problems, 3 for runtime failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Parse(_) | Self::Validation { .. } | Self::UnknownPreset(_) => 2,
            Self::Simulation(_) | Self::Io { .. } => 3,
        }
    }
}

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] pcfdyn_core::Error),
    #[error("{0}")]
    Input(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("thread pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.code(),
            CliError::Input(_) => "invalid-argument",
            CliError::Io(_) => "io",
            CliError::Json(_) => "json",
            CliError::Csv(_) => "csv",
            CliError::Pool(_) => "thread-pool",
        }
    }

    /// 3 for budget exhaustion, 2 for bad input, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(pcfdyn_core::Error::Budget { .. }) => 3,
            CliError::Core(_) | CliError::Input(_) => 2,
            _ => 1,
        }
    }
}

use thiserror::Error;

/// Failures of a command, each mapped to a process exit status.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("resource guard: {0}")]
    Resource(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Core(#[from] qdm_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 1,
            CliError::Core(qdm_core::Error::UnverifiedCircuit) => 2,
            CliError::Core(_) => 1,
            CliError::Verification(_) => 2,
            CliError::Resource(_) => 3,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

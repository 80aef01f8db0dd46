use thiserror::Error;

/// Failures of a command, each mapped to a process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("empty: {0}")]
    Empty(String),
    #[error("unknown within budget: {0}")]
    Unknown(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Empty(_) => 3,
            CliError::Unknown(_) => 4,
            CliError::Io(_) => 1,
        }
    }
}

impl From<hypcurve_core::Error> for CliError {
    fn from(e: hypcurve_core::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Validation(format!("malformed document: {e}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;

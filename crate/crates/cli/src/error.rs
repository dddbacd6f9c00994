use std::path::PathBuf;

use thiserror::Error;

/// Failures of a CLI invocation.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("cannot read config {path}: {source}")]
    ConfigRead {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("invalid config {path}: {source}")]
    ConfigParse {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },

    #[error("invalid {command} parameters: {source}")]
    Params {
        command: &'static str,
        #[source]
        source: serde_json::Error,
    },

    #[error("{0}")]
    Invalid(#[source] qembed_core::Error),

    #[error("{0}")]
    Run(#[source] qembed_core::Error),

    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// 2 for problems with the invocation, 1 for failures while running or writing.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_)
            | CliError::ConfigRead { .. }
            | CliError::ConfigParse { .. }
            | CliError::Params { .. }
            | CliError::Invalid(_) => 2,
            CliError::Run(_) | CliError::Write { .. } => 1,
        }
    }
}

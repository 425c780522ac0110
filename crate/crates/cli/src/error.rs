use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{context}: {source}")]
    Core {
        context: String,
        #[source]
        source: ghap_core::Error,
    },

    #[error("writing output: {0}")]
    Output(#[from] std::io::Error),
}

impl CliError {
    /// Process exit code: 1 usage, 2 validation or parse, 3 solver or inference.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Parse { .. } | CliError::Io { .. } | CliError::Output(_) => 2,
            CliError::Core { source, .. } if source.is_solver_error() => 3,
            CliError::Core { .. } => 2,
        }
    }

    pub(crate) fn parse(path: impl Into<PathBuf>, message: impl Into<String>) -> Self {
        CliError::Parse {
            path: path.into(),
            message: message.into(),
        }
    }

    pub(crate) fn core(context: impl Into<String>, source: ghap_core::Error) -> Self {
        CliError::Core {
            context: context.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

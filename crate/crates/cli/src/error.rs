use std::path::PathBuf;

use qwalk_core::WalkError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Clap(#[from] clap::Error),

    #[error("invalid `{field}`: {message}")]
    Usage { field: String, message: String },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Walk(WalkError),
}

impl CliError {
    pub fn usage(field: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Usage {
            field: field.into(),
            message: message.into(),
        }
    }

    /// Parameter errors become usage errors; the rest stay runtime errors.
    pub fn from_walk(e: WalkError) -> Self {
        match e {
            WalkError::InvalidParameter { field, reason } => CliError::usage(field, reason),
            other => CliError::Walk(other),
        }
    }

    pub fn is_usage(&self) -> bool {
        matches!(self, CliError::Usage { .. } | CliError::Clap(_))
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Clap(e) => e.exit_code(),
            CliError::Usage { .. } => 2,
            CliError::Io { .. } | CliError::Walk(_) => 1,
        }
    }
}

impl From<WalkError> for CliError {
    fn from(e: WalkError) -> Self {
        CliError::from_walk(e)
    }
}

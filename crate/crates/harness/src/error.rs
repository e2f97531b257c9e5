use std::io;
use std::path::PathBuf;

use qsums_core::{ParamTuple, QError};

use crate::report::CheckId;

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    /// Bad flags, ranges or config; nothing was evaluated.
    #[error("usage error: {0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{}: {source}", path.display())]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("{}: {source}", path.display())]
    Csv { path: PathBuf, source: csv::Error },
    #[error("{}: {source}", path.display())]
    Config {
        path: PathBuf,
        source: Box<toml::de::Error>,
    },
    /// A grid point the harness generated was rejected by the kernel. This is
    /// a harness bug, not a verdict.
    #[error("{check} at {params}: {source}")]
    Evaluation {
        check: CheckId,
        params: Box<ParamTuple>,
        source: Box<QError>,
    },
}

impl HarnessError {
    pub fn usage(msg: impl Into<String>) -> Self {
        HarnessError::Usage(msg.into())
    }

    /// Process exit code: 2 for usage errors, 3 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Usage(_) | HarnessError::Config { .. } => 2,
            _ => 3,
        }
    }
}

pub type Result<T, E = HarnessError> = std::result::Result<T, E>;

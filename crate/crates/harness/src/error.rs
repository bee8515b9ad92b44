use std::path::PathBuf;

use fracns_core::CoreError;
use fracns_inequalities::SuiteError;
use fracns_solver::SolverError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Core(#[from] CoreError),

    #[error(transparent)]
    Solver(#[from] SolverError),

    #[error(transparent)]
    Suite(#[from] SuiteError),

    #[error("fit of {key}: {reason}")]
    Fit { key: String, reason: String },

    #[error("preset {name}: {reason}")]
    Preset { name: String, reason: String },

    #[error("unknown preset '{0}'")]
    UnknownPreset(String),

    #[error("config: {0}")]
    Config(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, HarnessError>;

pub(crate) fn io_err(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> HarnessError {
    let path = path.into();
    move |source| HarnessError::Io { path, source }
}

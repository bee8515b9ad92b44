use fracns_core::CoreError;
use thiserror::Error;

use crate::diagnostics::DiagnosticsRecord;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolverError {
    #[error(transparent)]
    Core(#[from] CoreError),

    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),

    #[error("state became non-finite at t = {t}")]
    NonFinite {
        t: f64,
        last: Option<Box<DiagnosticsRecord>>,
    },
}

pub type Result<T> = std::result::Result<T, SolverError>;

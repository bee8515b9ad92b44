use fracns_core::CoreError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SuiteError {
    #[error(transparent)]
    Core(#[from] CoreError),

    /// A parameter lies outside the range the lemma is stated for.
    #[error("{lemma}: hypothesis violated: {violated}")]
    Hypothesis { lemma: String, violated: String },

    #[error("{lemma}: incompatible inputs: {reason}")]
    Inputs { lemma: String, reason: String },

    #[error("invalid suite configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, SuiteError>;

use thiserror::Error;

/// Errors raised by field construction, multipliers and operators.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoreError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("sample buffer has {got} values, grid needs {expected}")]
    ShapeMismatch { expected: usize, got: usize },

    #[error("fields live on different grids")]
    GridMismatch,

    #[error("non-finite sample at index {index}")]
    NonFiniteSample { index: usize },

    #[error("symbol is not finite at wavenumber ({xi1}, {xi2})")]
    NonFiniteSymbol { xi1: f64, xi2: f64 },

    #[error("negative power {power} requires projecting out the zero set of the symbol")]
    NegativePowerOnZeroMode { power: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("negative propagation time {0}")]
    NegativeTime(f64),

    #[error("mean vorticity carries {fraction:e} of the total spectral mass (limit {limit:e})")]
    MeanVorticity { fraction: f64, limit: f64 },

    #[error("velocity field is not solenoidal: max |div u| = {divergence:e}")]
    NotSolenoidal { divergence: f64 },

    #[error("truncation interval |x2| <= 1 does not fit in a box of length {l2}")]
    BoxTooSmall { l2: f64 },
}

pub type Result<T> = std::result::Result<T, CoreError>;

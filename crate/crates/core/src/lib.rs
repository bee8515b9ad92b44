//! Spectral core for the anisotropic fractional Navier-Stokes lab: grids,
//! transforms, Fourier multipliers, norms, operators, weights and model
//! parameters.

pub mod error;
pub mod field;
pub mod grid;
pub mod multiplier;
pub mod norms;
pub mod operators;
pub mod params;
pub mod report;
pub mod transform;
pub mod weights;

pub use error::{CoreError, Result};
pub use field::{RealField2D, SpectralField2D, VelocityField};
pub use grid::{Axis, Grid2D};
pub use multiplier::{
    apply_symbol, dealias_two_thirds, lambda1_pow, lambda_pow, partial_derivative, SymbolKind,
    ZeroModePolicy,
};
pub use norms::{
    l2_norm, lp_norm, mixed_norm, neg_horizontal_sobolev_norm, sobolev_norm, Exponent,
    MixedNormSpec, NegNorm,
};
pub use operators::SpectralVelocity;
pub use params::{ModelParams, Regime};
pub use report::{Provenance, RatioReport};
pub use transform::{forward_transform, inverse_transform};

//! Theorem-keyed experiments: presets, power-law fits of the diagnostic
//! series, verdicts against the predicted rates, and report files.

pub mod config;
pub mod error;
pub mod experiment;
pub mod fit;
pub mod predict;
pub mod preset;
pub mod report;

pub use error::{HarnessError, Result};
pub use experiment::{judge_rate, run_experiment, Bundle, Status, Verdict};
pub use fit::{default_window, fit_power_law, FitResult};
pub use predict::{predicted_exponents, predictions_for, TheoryPrediction};
pub use preset::{catalog, preset, ExperimentPreset, GridSpec};
pub use report::{emit_report, load_bundle, Format};

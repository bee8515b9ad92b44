//! Vorticity solver for the 2D Navier-Stokes system with horizontal
//! fractional dissipation, plus the diagnostics recorded along a run.

pub mod config;
pub mod csv;
pub mod diagnostics;
pub mod error;
pub mod ledger;
pub mod presets;
pub mod run;
pub mod state;
pub mod stepper;

pub use config::{SolverConfig, TimeStep};
pub use diagnostics::{DiagnosticsRecord, KEYS};
pub use error::{Result, SolverError};
pub use presets::{init_from_preset, InitialData};
pub use run::{run, RunOutput};
pub use state::{HypothesisNorms, SimState};
pub use stepper::{rhs_nonlinear, step, Stepper};

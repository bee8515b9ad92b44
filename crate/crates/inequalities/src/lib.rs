//! Empirical certification of the analytic inequalities: each one becomes a
//! ratio `lhs / rhs` (constant omitted) evaluated over randomized smooth
//! functions, swept over resolutions, with negative controls that must
//! visibly fail.

pub mod cases;
pub mod decay;
pub mod error;
pub mod evaluate;
pub mod family;
pub mod suite;

pub use cases::{interior_cases, InputShape, LemmaCase};
pub use decay::{decay_integral, eval_decay_convolution, summarize_decay, DecayBranch, DecayRow, DecaySummary};
pub use error::{Result, SuiteError};
pub use evaluate::{evaluate_ratio, evaluate_unchecked, inputs_for, LemmaInputs, Section};
pub use family::{Family, Sample};
pub use suite::{run_suite, SuiteConfig, SuiteReport};

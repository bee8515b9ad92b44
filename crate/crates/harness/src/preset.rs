//! Experiment presets, one per theorem.

use std::f64::consts::PI;

use fracns_core::{Grid2D, ModelParams, Regime};
use fracns_solver::{InitialData, SolverConfig, TimeStep};
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};

/// Relative band on fitted decay rates of solver runs.
pub const NONLINEAR_TOLERANCE: f64 = 0.2;
/// Relative band on fitted decay rates of semigroup-only runs.
pub const LINEAR_TOLERANCE: f64 = 0.1;
/// Largest admissible `nu (2 pi / l1)^{2s} t_end`. Past it the lowest
/// horizontal mode has decayed visibly and the torus rate is exponential.
pub const BOX_GAP_LIMIT: f64 = 0.1;
/// Fraction of the run always excluded from default fit windows.
pub const TRANSIENT_FRACTION: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub n1: usize,
    pub n2: usize,
    pub l1: f64,
    pub l2: f64,
}

impl GridSpec {
    pub fn grid(&self) -> Result<Grid2D> {
        Ok(Grid2D::new(self.n1, self.n2, self.l1, self.l2)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentPreset {
    pub name: String,
    pub regime: Regime,
    pub grid: GridSpec,
    pub params: ModelParams,
    pub solver: SolverConfig,
    pub initial: InitialData,
    /// Size of the regime's hypothesis sum on the initial data.
    pub eps: f64,
    /// Fit window `[t_lo, t_hi]`; the last decade of the run when absent.
    #[serde(default)]
    pub window: Option<[f64; 2]>,
    /// Relative band on decay rates; [`NONLINEAR_TOLERANCE`] or
    /// [`LINEAR_TOLERANCE`] when absent.
    #[serde(default)]
    pub tolerance: Option<f64>,
    /// Propagate the initial data by the linear semigroup only.
    #[serde(default)]
    pub linear: bool,
}

const BOX: f64 = 64.0 * PI;
const NU: f64 = 0.05;

fn grid_default() -> GridSpec {
    GridSpec {
        n1: 512,
        n2: 256,
        l1: BOX,
        l2: BOX,
    }
}

fn fixed(dt: f64, t_end: f64, stride: usize) -> SolverConfig {
    SolverConfig {
        step: TimeStep::Fixed { dt },
        t_end,
        diag_stride: stride,
    }
}

fn banded(band: usize) -> InitialData {
    InitialData::BandedStream { band, width: 8.0 }
}

pub const PRESET_NAMES: [&str; 4] = ["thm1-default", "thm3-default", "rem13-default", "thm4-default"];

pub fn catalog() -> Vec<ExperimentPreset> {
    let mk = |name: &str, regime, params, solver, band| ExperimentPreset {
        name: name.to_string(),
        regime,
        grid: grid_default(),
        params,
        solver,
        initial: banded(band),
        eps: 1e-3,
        window: None,
        tolerance: None,
        linear: false,
    };
    let p = |s, sigma, gamma, k| ModelParams {
        nu: NU,
        s,
        sigma,
        gamma,
        k,
    };
    vec![
        mk("thm1-default", Regime::Thm1, p(0.5, 0.4, 0.2, 3), fixed(0.05, 50.0, 10), 8),
        mk("thm3-default", Regime::Thm3, p(0.8, 0.4, 0.0, 10), fixed(0.5, 500.0, 10), 64),
        mk("rem13-default", Regime::Rem13, p(0.5, 0.4, 0.0, 10), fixed(0.1, 60.0, 6), 64),
        mk("thm4-default", Regime::Thm4, p(0.8, 0.45, 0.2, 31), fixed(0.5, 500.0, 10), 64),
    ]
}

pub fn preset(name: &str) -> Result<ExperimentPreset> {
    catalog()
        .into_iter()
        .find(|p| p.name == name)
        .ok_or_else(|| HarnessError::UnknownPreset(name.to_string()))
}

impl ExperimentPreset {
    /// `nu (2 pi / l1)^{2s} t_end`.
    pub fn box_gap(&self) -> f64 {
        self.params.nu * (2.0 * PI / self.grid.l1).powf(2.0 * self.params.s) * self.solver.t_end
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance.unwrap_or(if self.linear {
            LINEAR_TOLERANCE
        } else {
            NONLINEAR_TOLERANCE
        })
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |reason: String| {
            Err(HarnessError::Preset {
                name: self.name.clone(),
                reason,
            })
        };
        self.grid.grid()?;
        self.params.require(self.regime)?;
        self.solver.validate()?;
        if !(self.eps.is_finite() && self.eps >= 0.0) {
            return bad(format!("eps = {} must be >= 0", self.eps));
        }
        let gap = self.box_gap();
        if gap > BOX_GAP_LIMIT {
            return bad(format!(
                "nu (2 pi / l1)^(2s) t_end = {gap:.4} exceeds {BOX_GAP_LIMIT}; enlarge l1 or shorten the run"
            ));
        }
        if let Some([a, b]) = self.window {
            if !(a >= 0.0 && a < b) {
                return bad(format!("fit window [{a}, {b}] is empty"));
            }
        }
        if let Some(tol) = self.tolerance {
            if !(tol > 0.0 && tol < 1.0) {
                return bad(format!("tolerance {tol} must lie in (0, 1)"));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_presets_validate() {
        for p in catalog() {
            p.validate().unwrap_or_else(|e| panic!("{}: {e}", p.name));
            assert!(p.box_gap() <= BOX_GAP_LIMIT);
        }
        assert_eq!(catalog().len(), PRESET_NAMES.len());
    }

    #[test]
    fn long_runs_break_the_box_gap() {
        let mut p = preset("thm3-default").unwrap();
        p.solver.t_end = 5000.0;
        let e = p.validate().unwrap_err();
        assert!(e.to_string().contains("exceeds"), "{e}");
        assert!(matches!(preset("nope"), Err(HarnessError::UnknownPreset(_))));
    }
}

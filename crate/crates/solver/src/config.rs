use serde::{Deserialize, Serialize};

use crate::error::{Result, SolverError};

/// Step-size rule.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum TimeStep {
    /// Fixed step. The last step is shortened to land on `t_end`.
    Fixed { dt: f64 },
    /// `dt = min(cfl * min(h1, h2) / max|u|, dt_max)`, with `max|u|` taken
    /// at the most recent diagnostic.
    Auto { cfl: f64, dt_max: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub step: TimeStep,
    pub t_end: f64,
    /// Steps between diagnostic records.
    pub diag_stride: usize,
}

impl SolverConfig {
    pub const DEFAULT_CFL: f64 = 0.4;

    pub fn fixed(dt: f64, t_end: f64, diag_stride: usize) -> Result<Self> {
        let c = Self {
            step: TimeStep::Fixed { dt },
            t_end,
            diag_stride,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn auto(dt_max: f64, t_end: f64, diag_stride: usize) -> Result<Self> {
        let c = Self {
            step: TimeStep::Auto {
                cfl: Self::DEFAULT_CFL,
                dt_max,
            },
            t_end,
            diag_stride,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(SolverError::InvalidConfig(m));
        match self.step {
            TimeStep::Fixed { dt } if !(dt.is_finite() && dt > 0.0) => {
                return bad(format!("dt = {dt} must be positive"))
            }
            TimeStep::Auto { cfl, dt_max } => {
                if !(cfl > 0.0 && cfl <= 1.0) {
                    return bad(format!("cfl = {cfl} must lie in (0, 1]"));
                }
                if !(dt_max.is_finite() && dt_max > 0.0) {
                    return bad(format!("dt_max = {dt_max} must be positive"));
                }
            }
            _ => {}
        }
        if !(self.t_end.is_finite() && self.t_end >= 0.0) {
            return bad(format!("t_end = {} must be >= 0", self.t_end));
        }
        if self.diag_stride == 0 {
            return bad("diag_stride must be at least 1".into());
        }
        Ok(())
    }
}

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};

/// Theorem regime a parameter set can be tagged with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// Uniform `H^k` bound for weak dissipation.
    Thm1,
    /// Unweighted decay for `3/4 < s < 5/12 + sigma`.
    Thm3,
    /// Unweighted decay rates for `0 < s < 3/4`.
    Rem13,
    /// Weighted decay for `3/4 < s < 1/2 + sigma`.
    Thm4,
}

impl Regime {
    pub const ALL: [Regime; 4] = [Regime::Thm1, Regime::Thm3, Regime::Rem13, Regime::Thm4];

    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::Thm1 => "thm1",
            Regime::Thm3 => "thm3",
            Regime::Rem13 => "rem13",
            Regime::Thm4 => "thm4",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Regime {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<Self> {
        Regime::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| CoreError::InvalidParameter(format!("unknown regime '{s}'")))
    }
}

/// Dissipation and regularity parameters `(nu, s, sigma, gamma, k)`.
///
/// `nu = 0` is accepted so inviscid runs can share the same plumbing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub nu: f64,
    pub s: f64,
    pub sigma: f64,
    pub gamma: f64,
    pub k: u32,
}

impl ModelParams {
    pub fn new(nu: f64, s: f64, sigma: f64, gamma: f64, k: u32) -> Result<Self> {
        let p = Self { nu, s, sigma, gamma, k };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(CoreError::InvalidParameter(msg));
        if !(self.nu.is_finite() && self.nu >= 0.0) {
            return bad(format!("nu = {} must be finite and >= 0", self.nu));
        }
        if !(0.0..=1.0).contains(&self.s) {
            return bad(format!("s = {} must lie in [0, 1]", self.s));
        }
        if !(self.sigma > 0.0 && self.sigma < 0.5) {
            return bad(format!("sigma = {} must lie in (0, 1/2)", self.sigma));
        }
        if !(self.gamma.is_finite() && self.gamma >= 0.0) {
            return bad(format!("gamma = {} must be finite and >= 0", self.gamma));
        }
        if self.k == 0 {
            return bad("k must be a positive integer".into());
        }
        Ok(())
    }

    /// Hypotheses of `regime` that these parameters violate, as readable
    /// constraint strings. Empty when the regime applies.
    pub fn violations(&self, regime: Regime) -> Vec<String> {
        let (s, sigma, gamma, k) = (self.s, self.sigma, self.gamma, self.k as f64);
        let mut out = Vec::new();
        let mut need = |ok: bool, what: String| {
            if !ok {
                out.push(what);
            }
        };
        let sigma_window = |need: &mut dyn FnMut(bool, String)| {
            need(
                sigma > 1.0 / 3.0 && sigma < 0.5,
                format!("1/3 < sigma < 1/2 (sigma = {sigma})"),
            );
        };
        let k_thm3 = (2.0 * sigma / (1.0 - 2.0 * sigma) + 1.0).max(9.0);
        match regime {
            Regime::Thm1 => {
                need((0.0..=0.75).contains(&s), format!("0 <= s <= 3/4 (s = {s})"));
                need(self.k >= 3, format!("k >= 3 (k = {})", self.k));
            }
            Regime::Thm3 => {
                need(
                    s > 0.75 && s < 5.0 / 12.0 + sigma,
                    format!("3/4 < s < 5/12 + sigma (s = {s}, sigma = {sigma})"),
                );
                sigma_window(&mut need);
                need(k > k_thm3, format!("k > {k_thm3} (k = {})", self.k));
            }
            Regime::Rem13 => {
                need(s > 0.0 && s < 0.75, format!("0 < s < 3/4 (s = {s})"));
                sigma_window(&mut need);
                need(k > k_thm3, format!("k > {k_thm3} (k = {})", self.k));
            }
            Regime::Thm4 => {
                need(
                    s > 0.75 && s < 0.5 + sigma,
                    format!("3/4 < s < 1/2 + sigma (s = {s}, sigma = {sigma})"),
                );
                sigma_window(&mut need);
                need(gamma > 0.0 && gamma < 0.3, format!("0 < gamma < 3/10 (gamma = {gamma})"));
                let kmin = (2.0 * sigma + 2.0) / (1.0 - 2.0 * sigma) + 1.0;
                need(k > kmin, format!("k > {kmin} (k = {})", self.k));
            }
        }
        out
    }

    pub fn satisfies(&self, regime: Regime) -> bool {
        self.violations(regime).is_empty()
    }

    /// Every regime whose hypotheses hold.
    pub fn regimes(&self) -> Vec<Regime> {
        Regime::ALL.into_iter().filter(|r| self.satisfies(*r)).collect()
    }

    pub fn require(&self, regime: Regime) -> Result<()> {
        let v = self.violations(regime);
        if v.is_empty() {
            Ok(())
        } else {
            Err(CoreError::InvalidParameter(format!(
                "parameters violate {regime}: {}",
                v.join("; ")
            )))
        }
    }

    /// Weight exponents `((3 gamma + 4)/7, (5 gamma + 2)/7, gamma)`.
    pub fn weight_exponents(&self) -> (f64, f64, f64) {
        (
            (3.0 * self.gamma + 4.0) / 7.0,
            (5.0 * self.gamma + 2.0) / 7.0,
            self.gamma,
        )
    }
}

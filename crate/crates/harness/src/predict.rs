//! Decay exponents claimed by each theorem, keyed by diagnostic column.

use std::collections::BTreeMap;

use fracns_core::{CoreError, ModelParams, Regime};
use serde::{Deserialize, Serialize};

use crate::error::Result;

/// Claimed bound `||.|| <= C (1+t)^{-p}` for each covered key; `p > 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoryPrediction {
    pub regime: Regime,
    pub exponents: BTreeMap<String, f64>,
}

impl TheoryPrediction {
    pub fn get(&self, key: &str) -> Option<f64> {
        self.exponents.get(key).copied()
    }
}

/// The rate table of `regime` at `params`. The uniform-bound regime claims
/// no rate and yields an empty table.
pub fn predicted_exponents(params: &ModelParams, regime: Regime) -> Result<TheoryPrediction> {
    params.validate()?;
    let v = params.violations(regime);
    if !v.is_empty() {
        return Err(CoreError::InvalidParameter(format!("{regime} requires {}", v.join("; "))).into());
    }
    let (s, sig) = (params.s, params.sigma);
    let rows: Vec<(&str, f64)> = match regime {
        Regime::Thm1 => vec![],
        Regime::Thm3 => vec![
            ("l2_u1", sig / (2.0 * s)),
            ("l2_u2", (sig + 2.0 / 3.0) / (2.0 * s)),
            ("l2_p2u1", sig / (2.0 * s)),
            ("l2_p1u1", (sig + 1.0) / (2.0 * s)),
            ("l2_p1u2", 2.0 * sig / s),
        ],
        Regime::Rem13 => vec![
            ("l2_u1", sig / (2.0 * s)),
            ("l2_u2", (4.0 * sig + 1.0) / (4.0 * s)),
            ("l2_p2u1", sig / (2.0 * s)),
            ("l2_p1u1", (sig + 1.0) / (2.0 * s)),
            ("l2_p1u2", (2.0 * sig + 1.0) / (2.0 * s)),
        ],
        Regime::Thm4 => vec![
            ("w_u", sig / (2.0 * s)),
            ("w_p1u", (sig + 1.0) / (2.0 * s)),
            ("w_p2u1", sig / (2.0 * s)),
            ("w_u2", (sig + 1.0) / (2.0 * s)),
            ("w_p1u2", (2.0 * sig + 1.0) / (2.0 * s)),
        ],
    };
    Ok(TheoryPrediction {
        regime,
        exponents: rows.into_iter().map(|(k, p)| (k.to_string(), p)).collect(),
    })
}

/// The table of `primary`, followed by the table of every other decay regime
/// whose hypotheses the parameters also meet. Overlapping tables are kept
/// apart and judged separately.
pub fn predictions_for(params: &ModelParams, primary: Regime) -> Result<Vec<TheoryPrediction>> {
    let mut out = vec![predicted_exponents(params, primary)?];
    for r in [Regime::Thm3, Regime::Rem13, Regime::Thm4] {
        if r != primary && params.satisfies(r) {
            out.push(predicted_exponents(params, r)?);
        }
    }
    Ok(out)
}

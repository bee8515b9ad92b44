//! Energy bookkeeping over a run.

use serde::{Deserialize, Serialize};

use crate::diagnostics::DiagnosticsRecord;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DriftReport {
    /// `|E(t) - E(0)| / E(0)` per record.
    pub drifts: Vec<f64>,
    pub max_drift: f64,
}

/// Relative drift of `||u(t)||^2 + 2 nu int_0^t ||Lambda_1^s u||^2` from
/// `u0_sq = ||u0||^2`. Zero data gives zero drift.
pub fn energy_ledger(records: &[DiagnosticsRecord], nu: f64, u0_sq: f64) -> DriftReport {
    let drifts: Vec<f64> = records
        .iter()
        .map(|r| {
            let lhs = r.energy() + 2.0 * nu * r.get("diss").unwrap_or(0.0);
            if u0_sq == 0.0 {
                lhs.abs()
            } else {
                (lhs - u0_sq).abs() / u0_sq
            }
        })
        .collect();
    let max_drift = drifts.iter().cloned().fold(0.0, f64::max);
    DriftReport { drifts, max_drift }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HkLedger {
    /// `||u||_{H^k}^2 + 2 nu int_0^t ||Lambda_1^s u||_{H^k}^2` per record.
    pub sums: Vec<f64>,
    /// `max_{i < j} (sums[j] - sums[i]) / sums[0]`, clipped at 0.
    pub max_increase: f64,
    /// `sup_t ||u||_{H^k} / ||u0||_{H^k}`.
    pub sup_ratio: f64,
}

pub fn hk_ledger(records: &[DiagnosticsRecord], nu: f64) -> HkLedger {
    let sums: Vec<f64> = records
        .iter()
        .map(|r| r.get("hk_u").unwrap_or(0.0).powi(2) + 2.0 * nu * r.get("diss_hk").unwrap_or(0.0))
        .collect();
    let base = sums.first().copied().unwrap_or(0.0);
    let mut running_min = f64::INFINITY;
    let mut inc: f64 = 0.0;
    for &s in &sums {
        inc = inc.max(s - running_min);
        running_min = running_min.min(s);
    }
    let hk0 = records.first().and_then(|r| r.get("hk_u")).unwrap_or(0.0);
    let sup = records
        .iter()
        .filter_map(|r| r.get("hk_u"))
        .fold(0.0, f64::max);
    HkLedger {
        max_increase: if base > 0.0 { inc.max(0.0) / base } else { 0.0 },
        sup_ratio: if hk0 > 0.0 { sup / hk0 } else { 0.0 },
        sums,
    }
}

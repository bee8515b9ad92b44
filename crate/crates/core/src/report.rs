use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::grid::Grid2D;

/// Right-hand sides below this are treated as zero.
pub const DEGENERATE_RHS: f64 = 1e-300;

/// Where the inputs of a ratio evaluation came from.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Provenance {
    pub seed: Option<u64>,
    pub grid: Option<Grid2D>,
    pub family: String,
}

/// One evaluation `lhs / rhs` of an inequality with the constant omitted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioReport {
    pub lemma_id: String,
    pub params: BTreeMap<String, f64>,
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs / rhs`, or `0` for degenerate reports.
    pub ratio: f64,
    pub degenerate: bool,
    pub provenance: Provenance,
}

impl RatioReport {
    pub fn new(
        lemma_id: impl Into<String>,
        params: BTreeMap<String, f64>,
        lhs: f64,
        rhs: f64,
        provenance: Provenance,
    ) -> Self {
        let degenerate = !(rhs >= DEGENERATE_RHS) || !lhs.is_finite();
        let ratio = if degenerate { 0.0 } else { lhs.abs() / rhs };
        Self {
            lemma_id: lemma_id.into(),
            params,
            lhs,
            rhs,
            ratio,
            degenerate,
            provenance,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_rhs_is_degenerate() {
        let r = RatioReport::new("X", BTreeMap::new(), 0.0, 0.0, Provenance::default());
        assert!(r.degenerate);
        assert_eq!(r.ratio, 0.0);
        let r = RatioReport::new("X", BTreeMap::new(), 1.0, 4.0, Provenance::default());
        assert!(!r.degenerate);
        assert_eq!(r.ratio, 0.25);
    }
}

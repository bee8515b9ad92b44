//! Randomized sweeps over cases and resolutions, plus the negative controls.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use fracns_core::{Grid2D, Provenance, RatioReport};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cases::{interior_cases, InputShape, LemmaCase};
use crate::error::{Result, SuiteError};
use crate::evaluate::{evaluate_ratio, evaluate_unchecked, inputs_for};
use crate::family::{sample_seed, Family};

pub const SUITE_SCHEMA_VERSION: u32 = 1;

/// A case is stable when, at every resolution, the largest ratio is within
/// this factor of the median...
pub const MAX_OVER_MEDIAN: f64 = 10.0;
/// ...and the largest ratio moves by less than this across each refinement.
pub const MAX_DRIFT: f64 = 0.25;

/// Scale factors of the negative-control boxes.
pub const CONTROL_SCALES: [usize; 3] = [1, 2, 4];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SuiteConfig {
    pub seed: u64,
    pub n_samples: usize,
    /// Square grids `n x n`, coarsest first.
    pub resolutions: Vec<usize>,
    /// Side of the square box.
    pub box_length: f64,
    pub cases: Vec<LemmaCase>,
    /// Cases run outside their hypotheses on boxes scaled by [`CONTROL_SCALES`].
    pub controls: Vec<LemmaCase>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 20_240_601,
            n_samples: 100,
            resolutions: vec![64, 128],
            box_length: 8.0 * PI,
            cases: interior_cases(),
            controls: default_controls(),
        }
    }
}

/// `kappa = 1.2` for every Riesz product and `sigma = 0.6` for the
/// negative-order product.
pub fn default_controls() -> Vec<LemmaCase> {
    let mut v: Vec<LemmaCase> = fracns_core::weights::RieszOp::ALL
        .iter()
        .map(|&op| LemmaCase::L212 { kappa: 1.2, op })
        .collect();
    v.push(LemmaCase::L26 { sigma: 0.6 });
    v
}

/// The family each case draws from, for a base grid of `n_base` points on
/// a box of side `box_length`.
pub fn family_for(case: &LemmaCase, n_base: usize, box_length: f64) -> Family {
    let band = (n_base / 4) as i64;
    match case {
        LemmaCase::L23 { .. }
        | LemmaCase::L24A { .. }
        | LemmaCase::L24B { .. }
        | LemmaCase::L25 { .. }
        | LemmaCase::L27 { .. }
        | LemmaCase::Dec { .. } => Family::Periodic {
            band,
            envelope: None,
            zero_mean: true,
        },
        LemmaCase::L26 { .. } => Family::Localized {
            band,
            reference: box_length,
            w1: 3.0,
            w2: 2.0,
        },
        _ => Family::Periodic {
            band,
            envelope: Some(2.0),
            zero_mean: false,
        },
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResolutionStats {
    pub n1: usize,
    pub n2: usize,
    pub l1: f64,
    pub l2: f64,
    pub n_samples: usize,
    pub n_degenerate: usize,
    pub max_ratio: f64,
    pub median_ratio: f64,
}

impl ResolutionStats {
    fn from_reports(grid: Grid2D, reports: &[RatioReport]) -> Self {
        let mut r: Vec<f64> = reports.iter().filter(|r| !r.degenerate).map(|r| r.ratio).collect();
        r.sort_by(f64::total_cmp);
        let median = match r.len() {
            0 => 0.0,
            n if n % 2 == 1 => r[n / 2],
            n => 0.5 * (r[n / 2 - 1] + r[n / 2]),
        };
        Self {
            n1: grid.n1(),
            n2: grid.n2(),
            l1: grid.l1(),
            l2: grid.l2(),
            n_samples: reports.len(),
            n_degenerate: reports.len() - r.len(),
            max_ratio: r.last().copied().unwrap_or(0.0),
            median_ratio: median,
        }
    }

    pub fn max_over_median(&self) -> f64 {
        if self.median_ratio > 0.0 {
            self.max_ratio / self.median_ratio
        } else {
            0.0
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseSummary {
    pub case: LemmaCase,
    pub lemma_id: String,
    pub label: String,
    pub params: BTreeMap<String, f64>,
    pub family: String,
    pub per_resolution: Vec<ResolutionStats>,
    pub max_ratio: f64,
    /// Largest relative change of the max ratio between consecutive resolutions.
    pub resolution_drift: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ControlSummary {
    pub case: LemmaCase,
    pub label: String,
    pub family: String,
    /// One entry per box in [`CONTROL_SCALES`].
    pub per_box: Vec<ResolutionStats>,
    /// Max ratio strictly increases with the box.
    pub monotone_growth: bool,
}

/// One line of the JSON document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteRecord {
    pub lemma_id: String,
    pub params: BTreeMap<String, f64>,
    pub resolution: [usize; 2],
    pub box_size: [f64; 2],
    pub n_samples: usize,
    pub max_ratio: f64,
    pub median_ratio: f64,
    pub seed: u64,
    pub control: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub n_samples: usize,
    pub cases: Vec<CaseSummary>,
    pub controls: Vec<ControlSummary>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.cases.iter().all(|c| c.passed) && self.controls.iter().all(|c| c.monotone_growth)
    }

    pub fn records(&self) -> Vec<SuiteRecord> {
        let rec = |id: &str, params: &BTreeMap<String, f64>, s: &ResolutionStats, control: bool| SuiteRecord {
            lemma_id: id.to_string(),
            params: params.clone(),
            resolution: [s.n1, s.n2],
            box_size: [s.l1, s.l2],
            n_samples: s.n_samples,
            max_ratio: s.max_ratio,
            median_ratio: s.median_ratio,
            seed: self.seed,
            control,
        };
        let mut out = Vec::new();
        for c in &self.cases {
            out.extend(c.per_resolution.iter().map(|s| rec(&c.lemma_id, &c.params, s, false)));
        }
        for c in &self.controls {
            out.extend(c.per_box.iter().map(|s| rec(c.case.id(), &c.case.params(), s, true)));
        }
        out
    }

    /// `{schema_version, seed, n_samples, records, cases, controls}`.
    pub fn to_json(&self) -> String {
        let doc = serde_json::json!({
            "schema_version": SUITE_SCHEMA_VERSION,
            "seed": self.seed,
            "n_samples": self.n_samples,
            "records": self.records(),
            "cases": self.cases,
            "controls": self.controls,
        });
        serde_json::to_string_pretty(&doc).expect("suite report is plain data")
    }
}

/// FNV-1a, to key sample streams by case rather than by list position.
fn label_hash(label: &str) -> u64 {
    label
        .bytes()
        .fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

fn sample_reports(
    case: &LemmaCase,
    family: Family,
    grids: &[Grid2D],
    seed: u64,
    n_samples: usize,
    checked: bool,
) -> Result<Vec<Vec<RatioReport>>> {
    let key = label_hash(&case.label());
    let mut out = vec![Vec::with_capacity(n_samples); grids.len()];
    for i in 0..n_samples {
        let s = sample_seed(seed, key, i as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let a = family.draw(&mut rng);
        let b = (case.shape() == InputShape::Two).then(|| family.draw(&mut rng));
        for (k, &grid) in grids.iter().enumerate() {
            let inputs = inputs_for(case, a.eval(grid)?, b.as_ref().map(|b| b.eval(grid)).transpose()?)?;
            let prov = Provenance {
                seed: Some(s),
                grid: Some(grid),
                family: family.name(),
            };
            let r = if checked {
                evaluate_ratio(case, &inputs, prov)?
            } else {
                evaluate_unchecked(case, &inputs, prov)?
            };
            out[k].push(r);
        }
    }
    Ok(out)
}

fn summarize(case: &LemmaCase, family: Family, grids: &[Grid2D], reports: &[Vec<RatioReport>]) -> CaseSummary {
    let per: Vec<ResolutionStats> = grids
        .iter()
        .zip(reports)
        .map(|(&g, r)| ResolutionStats::from_reports(g, r))
        .collect();
    let drift = per
        .windows(2)
        .map(|w| (w[1].max_ratio - w[0].max_ratio).abs() / w[0].max_ratio)
        .fold(0.0, f64::max);
    let max_ratio = per.iter().map(|s| s.max_ratio).fold(0.0, f64::max);
    let stable = per
        .iter()
        .all(|s| s.max_ratio.is_finite() && s.max_over_median() <= MAX_OVER_MEDIAN);
    let monotone_ok = !matches!(case, LemmaCase::L29 { .. }) || max_ratio <= 1.0;
    CaseSummary {
        case: *case,
        lemma_id: case.id().to_string(),
        label: case.label(),
        params: case.params(),
        family: family.name(),
        max_ratio,
        resolution_drift: drift,
        passed: stable && drift < MAX_DRIFT && drift.is_finite() && monotone_ok,
        per_resolution: per,
    }
}

/// Every case at every resolution on the same `n_samples` continuum
/// functions, then every control on the scaled boxes.
pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    if config.n_samples == 0 {
        return Err(SuiteError::Config("n_samples must be >= 1".into()));
    }
    let n_base = *config
        .resolutions
        .first()
        .ok_or_else(|| SuiteError::Config("no resolutions".into()))?;
    let l = config.box_length;
    let grids = config
        .resolutions
        .iter()
        .map(|&n| Grid2D::new(n, n, l, l))
        .collect::<fracns_core::Result<Vec<_>>>()?;

    let mut cases = Vec::new();
    for case in &config.cases {
        let fam = family_for(case, n_base, l);
        let reports = sample_reports(case, fam, &grids, config.seed, config.n_samples, true)?;
        cases.push(summarize(case, fam, &grids, &reports));
    }

    let boxes = CONTROL_SCALES
        .iter()
        .map(|&k| Grid2D::new(n_base * k, n_base * k, l * k as f64, l * k as f64))
        .collect::<fracns_core::Result<Vec<_>>>()?;
    let mut controls = Vec::new();
    for case in &config.controls {
        let fam = family_for(case, n_base, l);
        let reports = sample_reports(case, fam, &boxes, config.seed, config.n_samples, false)?;
        let per_box: Vec<ResolutionStats> = boxes
            .iter()
            .zip(&reports)
            .map(|(&g, r)| ResolutionStats::from_reports(g, r))
            .collect();
        let monotone_growth = per_box.windows(2).all(|w| w[1].max_ratio > w[0].max_ratio);
        controls.push(ControlSummary {
            case: *case,
            label: case.label(),
            family: fam.name(),
            per_box,
            monotone_growth,
        });
    }

    Ok(SuiteReport {
        seed: config.seed,
        n_samples: config.n_samples,
        cases,
        controls,
    })
}

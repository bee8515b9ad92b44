use std::f64::consts::PI;

use fracns_core::weights::RieszOp;
use fracns_core::{Grid2D, Provenance, RatioReport, RealField2D};
use fracns_inequalities::decay::{DecayBranch, DECAY_TABLE};
use fracns_inequalities::suite::family_for;
use fracns_inequalities::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn tg(n: usize) -> RealField2D {
    RealField2D::from_fn(Grid2D::periodic_2pi(n).unwrap(), |x, y| x.cos() * y.cos())
}

fn ratio(case: LemmaCase, inputs: LemmaInputs) -> RatioReport {
    evaluate_ratio(&case, &inputs, Provenance::default()).unwrap()
}

// f = cos x1 cos x2 on [-pi, pi]^2:
//   ||f||^2 = pi^2, every first derivative has the same norm,
//   ||f^2||^2 = (int cos^4)^2 = (3 pi / 4)^2, |xi| = sqrt 2 on all four modes.

#[test]
fn l23_taylor_green_four_mode_value() {
    let f = tg(32);
    let r = ratio(LemmaCase::L23 { s1: 0.5, s2: 0.5 }, LemmaInputs::Two(f.clone(), f));
    // (3 pi / 4) / (sqrt 2 pi^2)
    let want = 3.0 / (4.0 * 2f64.sqrt() * PI);
    assert!((r.ratio - want).abs() < 1e-12, "{} vs {want}", r.ratio);
    assert!(r.ratio < 1.5);
}

#[test]
fn l22_taylor_green_value() {
    let f = tg(32);
    let r = ratio(LemmaCase::L22, LemmaInputs::Two(f.clone(), f));
    assert!((r.ratio - 3.0 / (4.0 * PI)).abs() < 1e-12);
}

#[test]
fn l21_taylor_green_value() {
    // ||f^2||_{L^1_{x1}} = pi cos^2 x2, whose L^2 norm is pi sqrt(3 pi / 4)
    let f = tg(32);
    let r = ratio(LemmaCase::L21, LemmaInputs::Two(f.clone(), f));
    assert!((r.ratio - (3.0 / (4.0 * PI)).sqrt()).abs() < 1e-12);
}

#[test]
fn l21_zero_inputs_are_degenerate() {
    let z = RealField2D::zeros(Grid2D::periodic_2pi(16).unwrap());
    let r = ratio(LemmaCase::L21, LemmaInputs::Two(z.clone(), z));
    assert!(r.degenerate);
    assert_eq!(r.ratio, 0.0);
}

#[test]
fn l27_single_mode_is_the_exponential() {
    let f = RealField2D::from_fn(Grid2D::periodic_2pi(32).unwrap(), |x, _| (3.0 * x).cos());
    for s in [0.5, 0.8] {
        for t in [0.01, 0.1, 1.0] {
            let case = LemmaCase::L27 {
                sigma: 0.0,
                s,
                nu: 1.0,
                p: 2.0,
                q: 2.0,
                t,
            };
            let r = ratio(case, LemmaInputs::One(f.clone()));
            let want = (-(3f64.powf(2.0 * s)) * t).exp();
            assert!((r.ratio - want).abs() < 1e-12 * want.max(1e-300) + 1e-15, "{} vs {want}", r.ratio);
            assert!(r.ratio <= 1.0);
        }
    }
}

#[test]
fn l31_vanishes_without_horizontal_dependence() {
    let f = RealField2D::from_fn(Grid2D::new(32, 32, 8.0 * PI, 8.0 * PI).unwrap(), |_, y| (-y * y / 8.0).exp());
    let r = ratio(LemmaCase::L31 { s: 0.5, k: 3, ell: 2 }, LemmaInputs::One(f));
    // both sides vanish: no x1 derivative survives
    assert!(r.lhs.abs() < 1e-12, "{}", r.lhs);
    assert!(r.degenerate);
}

#[test]
fn unweighted_pressure_gradient_is_a_projection() {
    // with eta = 0 the pressure gradient is the curl-free part of u.grad u
    let g = Grid2D::new(64, 64, 8.0 * PI, 8.0 * PI).unwrap();
    let fam = family_for(&LemmaCase::L51A { eta: 1.0, s: 0.8, nu: 1.0, lag: 0.0 }, 64, 8.0 * PI);
    for seed in 0..5 {
        let psi = fam.draw(&mut ChaCha8Rng::seed_from_u64(seed)).eval(g).unwrap();
        for lag in [0.0, 1.0] {
            let case = LemmaCase::L51A { eta: 0.0, s: 0.8, nu: 1.0, lag };
            let r = evaluate_unchecked(&case, &LemmaInputs::One(psi.clone()), Provenance::default()).unwrap();
            assert!(r.ratio <= 1.0 + 1e-12, "{}", r.ratio);
        }
    }
}

#[test]
fn hypotheses_are_enforced_by_name() {
    let f = tg(16);
    let e = evaluate_ratio(
        &LemmaCase::L212 {
            kappa: 1.2,
            op: RieszOp::R12,
        },
        &LemmaInputs::One(f.clone()),
        Provenance::default(),
    )
    .unwrap_err();
    assert!(matches!(e, SuiteError::Hypothesis { ref violated, .. } if violated.contains("kappa")));
    let e = evaluate_ratio(&LemmaCase::L23 { s1: 1.0, s2: 0.5 }, &LemmaInputs::Two(f.clone(), f.clone()), Provenance::default());
    assert!(e.is_err());
    let e = evaluate_ratio(&LemmaCase::L22, &LemmaInputs::One(f), Provenance::default()).unwrap_err();
    assert!(matches!(e, SuiteError::Inputs { .. }));
    assert!(eval_decay_convolution(1.5, 1.0, &[10.0]).is_err());
    assert!(eval_decay_convolution(1.5, 2.0, &[0.5]).is_err());
}

// mpmath quad at 30 digits
const DEC_REFERENCE: [(f64, f64, [f64; 3]); 5] = [
    (1.25, 2.0, [0.07516676133344457, 0.0035634377682722388, 0.00018239729529192768]),
    (2.0, 1.25, [0.07516676133344457, 0.0035634377682722388, 0.00018239729529192768]),
    (0.5, 2.0, [0.33869700191848779, 0.10196370627731445, 0.031722137281548109]),
    (0.5, 1.0, [1.1267787218699728, 0.59666866801751914, 0.2621656342917277]),
    (0.5, 0.3, [3.6086890082718664, 6.1643731085971102, 9.9325841059757387]),
];

#[test]
fn decay_integral_matches_reference_quadrature() {
    for (a, b, vals) in DEC_REFERENCE {
        let rows = eval_decay_convolution(a, b, &[10.0, 100.0, 1000.0]).unwrap();
        for (row, want) in rows.iter().zip(vals) {
            let rel = (row.integral - want).abs() / want;
            assert!(rel < 1e-10, "alpha {a} beta {b} t {}: {} vs {want}", row.t, row.integral);
        }
    }
}

#[test]
fn decay_table_reproduces_the_branches() {
    for (a, b) in DECAY_TABLE {
        let s = summarize_decay(a, b).unwrap();
        assert!(s.constant_drift < 0.10, "{a},{b}: drift {}", s.constant_drift);
        assert!(s.exponent_mismatch() < 0.05, "{a},{b}: {s:?}");
        if a >= 1.0 {
            let want = -a.min(b);
            assert!((s.integral_exponent - want).abs() < 0.05);
        }
    }
}

#[test]
fn logarithmic_branch_stays_bounded_to_ten_thousand() {
    let ts: Vec<f64> = (0..=30).map(|i| 10f64.powf(1.0 + i as f64 / 10.0)).collect();
    let rows = eval_decay_convolution(0.5, 1.0, &ts).unwrap();
    let r: Vec<f64> = rows.iter().map(DecayRow::ratio).collect();
    assert!(r.iter().all(|&v| v.is_finite() && v < 2.0 && v > 1.0), "{r:?}");
    assert_eq!(DecayBranch::classify(0.5, 1.0).unwrap(), DecayBranch::FullBetaEq1);
}

#[test]
fn suite_is_deterministic_and_l29_is_exact() {
    let cfg = SuiteConfig {
        n_samples: 4,
        resolutions: vec![32, 64],
        cases: vec![LemmaCase::L29 { gamma1: 0.1, gamma2: 0.3 }, LemmaCase::L22],
        controls: vec![],
        ..Default::default()
    };
    let a = run_suite(&cfg).unwrap();
    let b = run_suite(&cfg).unwrap();
    assert_eq!(a.to_json(), b.to_json());
    assert!(a.cases[0].max_ratio <= 1.0);
    let doc: serde_json::Value = serde_json::from_str(&a.to_json()).unwrap();
    assert_eq!(doc["schema_version"], 1);
    let rec = &doc["records"][0];
    for key in ["lemma_id", "params", "n_samples", "max_ratio", "median_ratio", "seed"] {
        assert!(!rec[key].is_null(), "missing {key}");
    }
    assert_eq!(doc["records"].as_array().unwrap().len(), 4);
}

#[test]
fn zero_samples_rejected() {
    let cfg = SuiteConfig {
        n_samples: 0,
        ..Default::default()
    };
    assert!(run_suite(&cfg).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ratios_are_multi_homogeneous(
        which in 0usize..1000,
        seed in 0u64..1000,
        lam in prop_oneof![-10.0f64..-0.1, 0.1f64..10.0],
        mu in prop_oneof![-10.0f64..-0.1, 0.1f64..10.0],
    ) {
        let cases = interior_cases();
        let case = cases[which % cases.len()];
        let l = 8.0 * PI;
        let g = Grid2D::new(32, 32, l, l).unwrap();
        let fam = family_for(&case, 32, l);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = fam.draw(&mut rng).eval(g).unwrap();
        let h = fam.draw(&mut rng).eval(g).unwrap();
        let two = case.shape() == InputShape::Two;
        let base = inputs_for(&case, f.clone(), two.then(|| h.clone())).unwrap();
        let scaled = inputs_for(&case, f.scale(lam), two.then(|| h.scale(mu))).unwrap();
        let a = evaluate_ratio(&case, &base, Provenance::default()).unwrap();
        let b = evaluate_ratio(&case, &scaled, Provenance::default()).unwrap();
        prop_assert!(!a.degenerate);
        prop_assert!((a.ratio - b.ratio).abs() <= 1e-10 * a.ratio, "{}: {} vs {}", case.label(), a.ratio, b.ratio);
    }

    #[test]
    fn weight_monotonicity_holds_samplewise(seed in 0u64..10_000, g1 in -1.0f64..1.0, dg in 0.0f64..1.0) {
        let l = 8.0 * PI;
        let g = Grid2D::new(32, 32, l, l).unwrap();
        let case = LemmaCase::L29 { gamma1: g1, gamma2: g1 + dg };
        let f = family_for(&case, 32, l).draw(&mut ChaCha8Rng::seed_from_u64(seed)).eval(g).unwrap();
        let r = evaluate_ratio(&case, &LemmaInputs::One(f), Provenance::default()).unwrap();
        prop_assert!(r.ratio <= 1.0);
    }
}

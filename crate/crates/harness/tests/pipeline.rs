use std::fs;

use fracns_core::{ModelParams, Regime};
use fracns_harness::config::parse_preset;
use fracns_harness::report::{plot_script, verdict_json};
use fracns_harness::*;
use fracns_solver::InitialData;
use proptest::prelude::*;

fn small_thm3() -> ExperimentPreset {
    parse_preset(include_str!("../../../configs/experiment.toml")).unwrap()
}

#[test]
fn zero_data_is_degenerately_consistent() {
    let mut p = small_thm3();
    p.initial = InitialData::Zero;
    p.solver.t_end = 20.0;
    let b = run_experiment(&p).unwrap();
    assert_eq!(b.status(), Status::Consistent);
    assert!(b.fits.is_empty());
    assert!(b.verdicts.iter().all(|v| v.detail == "identically zero"));
    assert_eq!(b.verdicts.len(), 5);
}

#[test]
fn empty_bundle_has_empty_arrays() {
    let b = Bundle {
        preset: preset("thm1-default").unwrap(),
        records: vec![],
        window: [0.0, 1.0],
        fits: vec![],
        predictions: vec![],
        verdicts: vec![],
        steps: 0,
        aborted: None,
    };
    let doc: serde_json::Value = serde_json::from_str(&verdict_json(&b)).unwrap();
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["preset"], "thm1-default");
    assert_eq!(doc["params"]["k"], 3);
    for key in ["fits", "predictions", "verdicts"] {
        assert_eq!(doc[key].as_array().map(Vec::len), Some(0), "{key}");
    }
    assert_eq!(doc["status"], "consistent");
}

#[test]
fn small_thm3_run_is_consistent_and_ordered() {
    let b = run_experiment(&small_thm3()).unwrap();
    assert_eq!(b.status(), Status::Consistent, "{:#?}", b.verdicts);
    let (u1, u2, p1u1) = (b.rate("l2_u1").unwrap(), b.rate("l2_u2").unwrap(), b.rate("l2_p1u1").unwrap());
    assert!(u2 >= u1 - 0.05);
    assert!(p1u1 >= u1 + 0.3);

    // one guide per predicted key, slope = -prediction
    let plot = plot_script(&b, "x.csv");
    let guides: Vec<&str> = plot.lines().filter(|l| l.starts_with("# guide ")).collect();
    assert_eq!(guides.len(), b.predictions[0].exponents.len());
    for (key, p) in &b.predictions[0].exponents {
        let line = guides.iter().find(|l| l.contains(&format!("key={key} "))).unwrap();
        let slope: f64 = line.rsplit("slope=").next().unwrap().parse().unwrap();
        assert_eq!(slope, -p);
    }
}

#[test]
fn reports_are_byte_identical_across_reruns() {
    let mut p = small_thm3();
    p.initial = InitialData::RandomBand { seed: 7, band: 16 };
    p.solver.t_end = 40.0;
    p.window = Some([4.0, 40.0]);
    let (d1, d2) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let f1 = emit_report(&run_experiment(&p).unwrap(), d1.path(), &Format::ALL).unwrap();
    let f2 = emit_report(&run_experiment(&p).unwrap(), d2.path(), &Format::ALL).unwrap();
    for (a, b) in f1.iter().zip(&f2) {
        assert_eq!(fs::read(a).unwrap(), fs::read(b).unwrap(), "{}", a.display());
    }
    let back = load_bundle(&f1[3]).unwrap();
    assert_eq!(back, run_experiment(&p).unwrap());
}

#[test]
fn unwritable_destination_is_an_error() {
    let d = tempfile::tempdir().unwrap();
    let file = d.path().join("plain");
    fs::write(&file, "x").unwrap();
    let mut p = small_thm3();
    p.initial = InitialData::Zero;
    p.solver.t_end = 2.0;
    let b = run_experiment(&p).unwrap();
    assert!(matches!(emit_report(&b, &file, &[Format::Json]), Err(HarnessError::Io { .. })));
}

#[test]
fn linear_presets_use_the_tighter_band() {
    let mut p = small_thm3();
    p.linear = true;
    p.tolerance = None;
    let b = run_experiment(&p).unwrap();
    assert_eq!(b.steps, 0);
    assert!(b.verdicts.iter().all(|v| !v.detail.contains("band 0.2")));
    assert_eq!(b.status(), Status::Consistent);
}

fn valid_params() -> impl Strategy<Value = (ModelParams, Regime)> {
    prop_oneof![
        (0.34f64..0.49, 0.0f64..1.0).prop_map(|(sigma, f)| {
            let s = 0.7501 + f * (5.0 / 12.0 + sigma - 0.7502);
            (ModelParams::new(0.1, s, sigma, 0.0, 60).unwrap(), Regime::Thm3)
        }),
        (0.34f64..0.49, 0.01f64..0.74).prop_map(|(sigma, s)| (ModelParams::new(0.1, s, sigma, 0.0, 60).unwrap(), Regime::Rem13)),
        (0.34f64..0.49, 0.0f64..1.0, 0.01f64..0.29).prop_map(|(sigma, f, g)| {
            let s = 0.7501 + f * (0.5 + sigma - 0.7502);
            (ModelParams::new(0.1, s, sigma, g, 200).unwrap(), Regime::Thm4)
        }),
    ]
}

proptest! {
    #[test]
    fn predictions_are_positive_with_the_derivative_gap((p, r) in valid_params()) {
        let t = predicted_exponents(&p, r).unwrap();
        prop_assert_eq!(t.exponents.len(), 5);
        prop_assert!(t.exponents.values().all(|&e| e > 0.0));
        let (d, u) = match r {
            Regime::Thm4 => ("w_p1u", "w_u"),
            _ => ("l2_p1u1", "l2_u1"),
        };
        prop_assert!((t.get(d).unwrap() - t.get(u).unwrap() - 1.0 / (2.0 * p.s)).abs() < 1e-12);
    }

    #[test]
    fn widening_the_band_never_worsens_a_verdict(
        rate in -1.0f64..3.0,
        se in 0.0f64..0.5,
        pred in 0.01f64..3.0,
        t1 in 0.0f64..0.99,
        dt in 0.0f64..0.5,
    ) {
        let t2 = (t1 + dt).min(0.999);
        prop_assert!(judge_rate(rate, se, pred, t2) <= judge_rate(rate, se, pred, t1));
    }

    #[test]
    fn fit_is_affine_equivariant(
        e in -2.0f64..1.0,
        lam in 1e-6f64..1e6,
        wiggle in 0.0f64..0.3,
    ) {
        let t: Vec<f64> = (0..40).map(|i| 1.0 + 3.0 * i as f64).collect();
        let y: Vec<f64> = t.iter().map(|t| (1.0 + t).powf(e) * (1.0 + wiggle * t.sin())).collect();
        let ys: Vec<f64> = y.iter().map(|v| lam * v).collect();
        let a = fit_power_law("k", &t, &y, [0.0, 200.0]).unwrap();
        let b = fit_power_law("k", &t, &ys, [0.0, 200.0]).unwrap();
        prop_assert!((a.exponent - b.exponent).abs() < 1e-12);
        prop_assert!((b.intercept - a.intercept - lam.ln()).abs() < 1e-9);
    }
}

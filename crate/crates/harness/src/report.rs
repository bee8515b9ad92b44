//! CSV, JSON and plot-description artifacts of a bundle.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use fracns_solver::csv::to_csv;
use fracns_solver::KEYS;
use serde::{Deserialize, Serialize};

use crate::error::{io_err, HarnessError, Result};
use crate::experiment::Bundle;

pub const REPORT_SCHEMA_VERSION: u32 = 1;
pub const PLOT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    Json,
    Plot,
    /// The whole bundle, readable by [`load_bundle`].
    Bundle,
}

impl Format {
    pub const ALL: [Format; 4] = [Format::Csv, Format::Json, Format::Plot, Format::Bundle];

    pub fn file_name(&self, stem: &str) -> String {
        match self {
            Format::Csv => format!("{stem}.csv"),
            Format::Json => format!("{stem}.json"),
            Format::Plot => format!("{stem}.gp"),
            Format::Bundle => format!("{stem}.bundle.json"),
        }
    }
}

#[derive(Serialize)]
struct PredictionRow<'a> {
    regime: &'a str,
    key: &'a str,
    exponent: f64,
}

pub fn verdict_json(b: &Bundle) -> String {
    let predictions: Vec<PredictionRow> = b
        .predictions
        .iter()
        .flat_map(|p| {
            p.exponents.iter().map(move |(k, &e)| PredictionRow {
                regime: p.regime.as_str(),
                key: k,
                exponent: e,
            })
        })
        .collect();
    let doc = serde_json::json!({
        "schema_version": REPORT_SCHEMA_VERSION,
        "preset": b.preset.name,
        "regime": b.preset.regime,
        "params": b.preset.params,
        "window": b.window,
        "status": b.status().as_str(),
        "aborted": b.aborted,
        "fits": b.fits,
        "predictions": predictions,
        "verdicts": b.verdicts,
    });
    serde_json::to_string_pretty(&doc).expect("report is plain data") + "\n"
}

/// A gnuplot script with one plot per diagnostic key and one dashed guide
/// `A (1+t)^{-p}` per predicted key, anchored on the data at the window start.
pub fn plot_script(b: &Bundle, csv_name: &str) -> String {
    let stem = &b.preset.name;
    let mut s = String::new();
    let _ = writeln!(s, "# fracns plot description, schema_version: {PLOT_SCHEMA_VERSION}");
    let _ = writeln!(s, "# data: {csv_name}");
    s.push_str("set datafile separator \",\"\nset datafile commentschars \"#\"\n");
    s.push_str("set logscale xy\nset xlabel \"1 + t\"\nset key top right\nset terminal pngcairo size 800,600\n");
    for (col, key) in KEYS.iter().enumerate() {
        if key.starts_with("diss") {
            continue;
        }
        let (t, y) = b.series(key);
        let _ = writeln!(s, "\n# plot key={key} column={}", col + 2);
        let _ = writeln!(s, "set output \"{stem}_{key}.png\"");
        let _ = writeln!(s, "set title \"{key}\"");
        let mut curves = vec![format!(
            "\"{csv_name}\" using (1+$1):{} with linespoints title \"{key}\"",
            col + 2
        )];
        for pred in &b.predictions {
            let Some(p) = pred.get(key) else { continue };
            let anchor = t
                .iter()
                .zip(&y)
                .find(|(&ti, _)| ti >= b.window[0])
                .map_or(1.0, |(&ti, &yi)| yi * (1.0 + ti).powf(p));
            let name = format!("guide_{}_{key}", pred.regime.as_str());
            let _ = writeln!(s, "# guide key={key} regime={} slope={:e}", pred.regime.as_str(), -p);
            let _ = writeln!(s, "{name}(x) = {anchor:e} * x**({:e})", -p);
            curves.push(format!("{name}(x) with lines dashtype 2 title \"{} slope {:.4}\"", pred.regime.as_str(), -p));
        }
        let _ = writeln!(s, "plot {}", curves.join(", \\\n     "));
    }
    s
}

/// Writes the requested artifacts into `dir` as `<preset>.<ext>`.
pub fn emit_report(b: &Bundle, dir: &Path, formats: &[Format]) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let stem = &b.preset.name;
    let mut out = Vec::new();
    for f in formats {
        let path = dir.join(f.file_name(stem));
        let text = match f {
            Format::Csv => to_csv(&b.records),
            Format::Json => verdict_json(b),
            Format::Plot => plot_script(b, &Format::Csv.file_name(stem)),
            Format::Bundle => serde_json::to_string(b).expect("bundle is plain data") + "\n",
        };
        fs::write(&path, text).map_err(io_err(&path))?;
        out.push(path);
    }
    Ok(out)
}

pub fn load_bundle(path: &Path) -> Result<Bundle> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    serde_json::from_str(&text).map_err(|e| HarnessError::Config(format!("{}: {e}", path.display())))
}

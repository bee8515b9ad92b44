use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fracns_harness::config::{load_preset, load_suite};
use fracns_harness::preset::PRESET_NAMES;
use fracns_harness::report::Format;
use fracns_harness::{default_window, emit_report, fit_power_law, load_bundle, preset, run_experiment, Bundle, HarnessError, Status};
use fracns_inequalities::decay::DECAY_TABLE;
use fracns_inequalities::{run_suite, summarize_decay};
use fracns_solver::csv::parse_csv;

/// Experiments and inequality checks for 2D Navier-Stokes with horizontal
/// fractional dissipation.
///
/// Exit status: 0 all verdicts consistent, 2 something inconclusive,
/// 3 a violation candidate, 1 an error.
#[derive(Debug, Parser)]
#[command(name = "fracns", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the experiment described by a TOML file.
    Simulate {
        config: PathBuf,
        /// Directory for the CSV, JSON, plot and bundle files.
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Run the inequality suite described by a TOML file, plus the decay table.
    Verify {
        suite_config: PathBuf,
        /// Where to write the suite JSON; printed to stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fit a power law to one column of a diagnostics CSV.
    Fit {
        csv: PathBuf,
        #[arg(long)]
        key: String,
        /// `t_lo,t_hi`; the last decade of the series when absent.
        #[arg(long, value_parser = parse_window)]
        window: Option<[f64; 2]>,
    },
    /// Run a shipped preset.
    Experiment {
        /// One of thm1-default, thm3-default, rem13-default, thm4-default.
        preset: String,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Rewrite the CSV, JSON and plot files of a saved bundle.
    Report {
        bundle: PathBuf,
        /// Defaults to the bundle's directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_window(s: &str) -> Result<[f64; 2], String> {
    let parts: Vec<&str> = s.split(',').collect();
    let [a, b] = parts.as_slice() else {
        return Err(format!("expected t_lo,t_hi, got {s:?}"));
    };
    let p = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("{x:?}: {e}"));
    Ok([p(a)?, p(b)?])
}

fn summarize(b: &Bundle) {
    println!("preset {} ({}), {} records, window [{}, {}]", b.preset.name, b.preset.regime, b.records.len(), b.window[0], b.window[1]);
    for v in &b.verdicts {
        println!("  {:<20} {:<6} {:<18} {}", v.status.as_str(), v.regime.as_str(), v.check, v.detail);
    }
    println!("overall: {}", b.status().as_str());
}

fn finish(b: &Bundle, dir: &Path, formats: &[Format]) -> Result<Status, HarnessError> {
    for p in emit_report(b, dir, formats)? {
        println!("wrote {}", p.display());
    }
    summarize(b);
    Ok(b.status())
}

fn verify(path: &Path, out: Option<&Path>) -> Result<Status, HarnessError> {
    let cfg = load_suite(path)?;
    let report = run_suite(&cfg)?;
    let mut status = Status::Consistent;
    for c in &report.cases {
        let tag = if c.passed { "pass" } else { "FAIL" };
        println!("{tag} {:<40} max {:.4e} drift {:.3}", c.label, c.max_ratio, c.resolution_drift);
        if !c.passed {
            status = status.max(Status::ViolationCandidate);
        }
    }
    for c in &report.controls {
        let maxes: Vec<String> = c.per_box.iter().map(|s| format!("{:.4e}", s.max_ratio)).collect();
        let tag = if c.monotone_growth { "grows" } else { "FLAT" };
        println!("control {tag} {:<32} {}", c.label, maxes.join(" -> "));
        if !c.monotone_growth {
            status = status.max(Status::Inconclusive);
        }
    }
    for (a, b) in DECAY_TABLE {
        let s = summarize_decay(a, b)?;
        let ok = s.constant_drift < 0.1 && s.exponent_mismatch() < 0.05;
        println!(
            "{} decay alpha={a} beta={b} {:?}: drift {:.4} slopes {:.4} vs {:.4}",
            if ok { "pass" } else { "FAIL" },
            s.branch,
            s.constant_drift,
            s.integral_exponent,
            s.envelope_exponent
        );
        if !ok {
            status = status.max(Status::ViolationCandidate);
        }
    }
    let json = report.to_json();
    match out {
        Some(p) => {
            std::fs::write(p, json + "\n").map_err(|source| HarnessError::Io {
                path: p.to_path_buf(),
                source,
            })?;
            println!("wrote {}", p.display());
        }
        None => println!("{json}"),
    }
    Ok(status)
}

fn fit(path: &Path, key: &str, window: Option<[f64; 2]>) -> Result<Status, HarnessError> {
    let text = std::fs::read_to_string(path).map_err(|source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let table = parse_csv(&text)?;
    let col = |name: &str| {
        table
            .column(name)
            .ok_or_else(|| HarnessError::Config(format!("{} has no column {name}", path.display())))
    };
    let (t, y) = (col("t")?, col(key)?);
    let window = match window {
        Some(w) => w,
        None => {
            let (lo, hi) = (t.first().copied().unwrap_or(0.0), t.last().copied().unwrap_or(0.0));
            default_window(lo, hi, 0.0)
        }
    };
    let f = fit_power_law(key, &t, &y, window)?;
    println!(
        "{key}: exponent {} stderr {:.3e} intercept {:.6} n_points {} window [{}, {}]",
        f.exponent, f.stderr, f.intercept, f.n_points, f.window[0], f.window[1]
    );
    Ok(Status::Consistent)
}

fn dispatch(cmd: Command) -> Result<Status, HarnessError> {
    match cmd {
        Command::Simulate { config, out } => {
            let p = load_preset(&config)?;
            finish(&run_experiment(&p)?, &out, &Format::ALL)
        }
        Command::Verify { suite_config, out } => verify(&suite_config, out.as_deref()),
        Command::Fit { csv, key, window } => fit(&csv, &key, window),
        Command::Experiment { preset: name, out } => {
            let p = preset(&name)?;
            finish(&run_experiment(&p)?, &out, &Format::ALL)
        }
        Command::Report { bundle, out } => {
            let b = load_bundle(&bundle)?;
            let dir = out.unwrap_or_else(|| bundle.parent().map(Path::to_path_buf).unwrap_or_default());
            finish(&b, &dir, &[Format::Csv, Format::Json, Format::Plot])
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match dispatch(cli.command) {
        Ok(s) => ExitCode::from(s.exit_code() as u8),
        Err(e) => {
            eprintln!("error: {e}");
            if matches!(e, HarnessError::UnknownPreset(_)) {
                eprintln!("available presets: {}", PRESET_NAMES.join(", "));
            }
            ExitCode::from(1)
        }
    }
}

//! Diagnostics time series as CSV: a `# schema_version` comment, a header
//! row `t,<KEYS...>`, then one row per record with `{:.16e}` floats.

use std::fmt::Write as _;

use crate::diagnostics::{DiagnosticsRecord, KEYS};
use crate::error::{Result, SolverError};

pub const CSV_SCHEMA_VERSION: u32 = 1;

pub fn to_csv(records: &[DiagnosticsRecord]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# schema_version: {CSV_SCHEMA_VERSION}");
    s.push('t');
    for k in KEYS {
        s.push(',');
        s.push_str(k);
    }
    s.push('\n');
    for r in records {
        let _ = write!(s, "{:.16e}", r.t);
        for v in &r.values {
            let _ = write!(s, ",{v:.16e}");
        }
        s.push('\n');
    }
    s
}

/// Any CSV with a header row and numeric cells; `#` lines are skipped.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl CsvTable {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    /// Reassembles records; requires `t` and every diagnostic key.
    pub fn records(&self) -> Result<Vec<DiagnosticsRecord>> {
        let idx = |name: &str| {
            self.columns
                .iter()
                .position(|c| c == name)
                .ok_or_else(|| SolverError::InvalidConfig(format!("CSV lacks column {name}")))
        };
        let ti = idx("t")?;
        let ki = KEYS.iter().map(|k| idx(k)).collect::<Result<Vec<_>>>()?;
        Ok(self
            .rows
            .iter()
            .map(|r| DiagnosticsRecord {
                t: r[ti],
                values: ki.iter().map(|&i| r[i]).collect(),
            })
            .collect())
    }
}

pub fn parse_csv(text: &str) -> Result<CsvTable> {
    let bad = |m: String| SolverError::InvalidConfig(m);
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    let (_, header) = lines.next().ok_or_else(|| bad("CSV has no header row".into()))?;
    let columns: Vec<String> = header.split(',').map(|c| c.trim().to_string()).collect();
    let mut rows = Vec::new();
    for (ln, line) in lines {
        let row = line
            .split(',')
            .map(|c| {
                c.trim()
                    .parse::<f64>()
                    .map_err(|e| bad(format!("line {}: {e}: {c:?}", ln + 1)))
            })
            .collect::<Result<Vec<f64>>>()?;
        if row.len() != columns.len() {
            return Err(bad(format!(
                "line {}: {} cells, header has {}",
                ln + 1,
                row.len(),
                columns.len()
            )));
        }
        rows.push(row);
    }
    Ok(CsvTable { columns, rows })
}

//! TOML experiment and suite files.

use std::fs;
use std::path::Path;

use fracns_inequalities::SuiteConfig;

use crate::error::{io_err, HarnessError, Result};
use crate::preset::ExperimentPreset;

pub fn parse_preset(text: &str) -> Result<ExperimentPreset> {
    let p: ExperimentPreset = toml::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))?;
    p.validate()?;
    Ok(p)
}

pub fn load_preset(path: &Path) -> Result<ExperimentPreset> {
    parse_preset(&fs::read_to_string(path).map_err(io_err(path))?)
}

/// Missing keys take the [`SuiteConfig`] defaults.
pub fn parse_suite(text: &str) -> Result<SuiteConfig> {
    toml::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))
}

pub fn load_suite(path: &Path) -> Result<SuiteConfig> {
    parse_suite(&fs::read_to_string(path).map_err(io_err(path))?)
}

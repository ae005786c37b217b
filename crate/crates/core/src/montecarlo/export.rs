use std::path::{Path, PathBuf};

use super::ExperimentResult;
use crate::error::Result;

pub const CSV_HEADER: &str = "p,trials,failures,rate,ci_lo,ci_hi,retries_mean,seconds";

impl ExperimentResult {
    /// One row per swept `p`. Every column except `seconds` is a pure
    /// function of the configuration and seed.
    pub fn to_csv(&self) -> String {
        let mut out = format!("{CSV_HEADER}\n");
        for r in &self.records {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{:.3}\n",
                r.p, r.trials, r.failures, r.rate, r.ci_lo, r.ci_hi, r.retries_mean, r.seconds
            ));
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Writes `<base>.csv` and `<base>.json`; returns both paths.
pub fn export_results(result: &ExperimentResult, base: impl AsRef<Path>) -> Result<(PathBuf, PathBuf)> {
    let base = base.as_ref();
    let base = match base.extension().and_then(|e| e.to_str()) {
        Some("csv" | "json") => base.with_extension(""),
        _ => base.to_path_buf(),
    };
    let csv = base.with_extension("csv");
    let json = base.with_extension("json");
    if let Some(dir) = csv.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    std::fs::write(&csv, result.to_csv())?;
    std::fs::write(&json, result.to_json()? + "\n")?;
    Ok((csv, json))
}

pub fn read_results(path: impl AsRef<Path>) -> Result<ExperimentResult> {
    Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
}

// SPDX-License-Identifier: Apache-2.0

//! On-disk cache for classification reports and scan checkpoints.
//!
//! Layout under the cache directory:
//!
//! ```text
//! reports/k{k}-n{n}-{relation}-v{version}.json   sealed ClassificationReport
//! checkpoints/sep-p2-5-{mode}.json                resumable scan state
//! ```
//!
//! `FNCLASS_CACHE` overrides the directory chosen on the command line.

use std::fs;
use std::path::{Path, PathBuf};

use crate::classify::ClassificationReport;
use crate::error::Result;

pub const CACHE_ENV: &str = "FNCLASS_CACHE";

/// Bumped whenever report contents could change for the same inputs.
pub const FORMAT_VERSION: u32 = 1;

/// The effective cache directory: the environment variable wins over `cli`.
pub fn resolve_dir(cli: Option<&Path>) -> Option<PathBuf> {
    match std::env::var_os(CACHE_ENV) {
        Some(v) if !v.is_empty() => Some(PathBuf::from(v)),
        _ => cli.map(Path::to_path_buf),
    }
}

/// Writes through a temporary file and a rename, so readers never see a
/// partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

pub struct Cache {
    root: PathBuf,
}

impl Cache {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        Cache { root: root.into() }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn report_path(&self, k: u8, n: usize, relation: &str) -> PathBuf {
        self.root.join("reports").join(format!("k{k}-n{n}-{relation}-v{FORMAT_VERSION}.json"))
    }

    pub fn checkpoint_path(&self, name: &str) -> PathBuf {
        self.root.join("checkpoints").join(format!("{name}.json"))
    }

    pub fn load_report(&self, k: u8, n: usize, relation: &str) -> Result<Option<ClassificationReport>> {
        let path = self.report_path(k, n, relation);
        if !path.exists() {
            return Ok(None);
        }
        Ok(Some(serde_json::from_slice(&fs::read(path)?)?))
    }

    pub fn store_report(&self, report: &ClassificationReport) -> Result<PathBuf> {
        let path = self.report_path(report.k, report.n, &report.relation);
        write_atomic(&path, &serde_json::to_vec_pretty(report)?)?;
        Ok(path)
    }
}

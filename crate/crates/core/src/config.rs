use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::compare::Thresholds;
use crate::curves::DEFAULT_CURVE_BUDGET;
use crate::error::{Error, Result};
use crate::field::DEFAULT_TABLE_THRESHOLD;
use crate::trace_lab::{SystemParams, TableOptions};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

/// Everything a pipeline run depends on. Stored as TOML.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub p: u32,
    pub f: u32,
    pub f0: u32,
    pub psi: u64,
    pub max_degree: u32,
    /// Largest field a trace table may be computed over.
    pub budget: u64,
    /// Largest field whose plane-curve point counts are enumerated.
    pub curve_budget: u64,
    pub cache_dir: Option<PathBuf>,
    /// Worker threads; `None` uses the rayon default.
    pub threads: Option<usize>,
    pub format: Format,
    pub thresholds: Thresholds,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            p: 3,
            f: 1,
            f0: 1,
            psi: 1,
            max_degree: 8,
            budget: DEFAULT_TABLE_THRESHOLD,
            curve_budget: DEFAULT_CURVE_BUDGET,
            cache_dir: None,
            threads: None,
            format: Format::Csv,
            thresholds: Thresholds::default(),
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        self.params()?;
        if self.budget == 0 || self.curve_budget == 0 {
            return Err(Error::Config("budgets must be positive".into()));
        }
        if self.threads == Some(0) {
            return Err(Error::Config("threads must be positive".into()));
        }
        if self.max_degree == 0 {
            return Err(Error::Config("max_degree must be >= 1".into()));
        }
        let t = &self.thresholds;
        if !(t.tv_max >= 0.0 && t.m3_tolerance >= 0.0) {
            return Err(Error::Config("tolerances must be nonnegative".into()));
        }
        Ok(())
    }

    pub fn params(&self) -> Result<SystemParams> {
        SystemParams::with_base(self.p, self.f, self.f0, self.psi)
    }

    pub fn table_options(&self) -> TableOptions {
        TableOptions {
            budget: self.budget,
            cache_dir: self.cache_dir.clone(),
        }
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn from_toml(text: &str) -> Result<RunConfig> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<RunConfig> {
        RunConfig::from_toml(&fs::read_to_string(path)?)
    }

    /// The settings that determine output contents, for output headers.
    /// Thread count and cache location are left out: they never change
    /// results.
    pub fn describe(&self) -> String {
        let t = &self.thresholds;
        format!(
            "p={} f={} f0={} psi={} max_degree={} budget={} curve_budget={} format={} tv_max={} m3_tolerance={} min_field_size={}",
            self.p,
            self.f,
            self.f0,
            self.psi,
            self.max_degree,
            self.budget,
            self.curve_budget,
            self.format,
            t.tv_max,
            t.m3_tolerance,
            t.min_field_size
        )
    }
}

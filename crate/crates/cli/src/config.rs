//! Defaults shared by the subcommands.
//!
//! Values come from, in increasing priority: built-in defaults, the
//! `--config` TOML file, and command-line flags. The output directory also
//! falls back to the `TEAMFORM_OUT` environment variable.
//!
//! ```toml
//! out = "report"
//! threshold = 0.9
//!
//! [algorithm]
//! rng_seed = 20200801
//! hop_limit = 2
//! hd_degree_factor = 2.0
//! tie_break = "ascending-id"
//!
//! [ingest]
//! min_pubs = 3
//! min_joint = 3
//! min_skill_count = 2
//! ```

use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::Deserialize;
use teamform_core::ingest::IngestConfig;
use teamform_core::AlgorithmConfig;

use crate::args::AlgoFlags;

pub const OUT_ENV: &str = "TEAMFORM_OUT";
pub const DEFAULT_OUT: &str = "teamform-out";
pub const DEFAULT_THRESHOLD: f64 = 0.9;

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub out: Option<PathBuf>,
    pub threshold: Option<f64>,
    pub algorithm: AlgorithmConfig,
    pub ingest: IngestConfig,
}

impl RunConfig {
    pub fn load(path: Option<&Path>) -> anyhow::Result<Self> {
        let Some(path) = path else {
            return Ok(RunConfig::default());
        };
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn algorithm(&self, flags: &AlgoFlags) -> anyhow::Result<AlgorithmConfig> {
        let mut cfg = self.algorithm.clone();
        if let Some(s) = flags.rng_seed {
            cfg.rng_seed = s;
        }
        if let Some(h) = flags.hop_limit {
            cfg.hop_limit = h;
        }
        if let Some(f) = flags.hd_degree_factor {
            cfg.hd_degree_factor = f;
        }
        if let Some(t) = flags.tie_break {
            cfg.tie_break = t.into();
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn threshold(&self, flag: Option<f64>) -> f64 {
        flag.or(self.threshold).unwrap_or(DEFAULT_THRESHOLD)
    }

    pub fn out_dir(&self, flag: Option<&Path>) -> PathBuf {
        flag.map(Path::to_path_buf)
            .or_else(|| std::env::var_os(OUT_ENV).map(PathBuf::from))
            .or_else(|| self.out.clone())
            .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT))
    }
}

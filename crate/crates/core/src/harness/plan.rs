use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algorithms::{Algorithm, AlgorithmConfig, DEFAULT_SEED};
use crate::error::{Error, Result};

/// A multi-trial experiment, usually read from TOML.
///
/// ```toml
/// k_range = [4, 20]
/// trials = 100
/// algorithms = ["tfc-r", "tfc-n", "rf", "minld-star", "minsd"]
/// task_source = "vldb"
/// seed = 20200801
///
/// [k_caps]
/// dblp = 16
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentPlan {
    /// Inclusive task sizes.
    pub k_range: [usize; 2],
    pub trials: usize,
    pub algorithms: Vec<Algorithm>,
    /// Graph whose skill universe supplies the tasks; the smallest graph when unset.
    pub task_source: Option<String>,
    pub seed: u64,
    pub hop_limit: u32,
    pub hd_degree_factor: f64,
    /// Largest task size to run on the named graph.
    pub k_caps: BTreeMap<String, usize>,
    /// Redraw budget per trial for tasks some graph cannot cover.
    pub max_redraws: usize,
}

impl Default for ExperimentPlan {
    fn default() -> Self {
        ExperimentPlan {
            k_range: [4, 20],
            trials: 100,
            algorithms: vec![
                Algorithm::TfcR,
                Algorithm::TfcN,
                Algorithm::RarestFirst,
                Algorithm::MinLdStar,
                Algorithm::MinSd,
            ],
            task_source: None,
            seed: DEFAULT_SEED,
            hop_limit: 2,
            hd_degree_factor: 2.0,
            k_caps: BTreeMap::new(),
            max_redraws: 1000,
        }
    }
}

impl ExperimentPlan {
    pub fn parse(text: &str) -> Result<Self> {
        let plan: ExperimentPlan = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        plan.validate()?;
        Ok(plan)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text).map_err(|e| match e {
            Error::Config(m) => Error::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn validate(&self) -> Result<()> {
        let [lo, hi] = self.k_range;
        if lo == 0 || lo > hi {
            return Err(Error::Config(format!(
                "k_range must satisfy 1 <= min <= max, got [{lo}, {hi}]"
            )));
        }
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if self.algorithms.is_empty() {
            return Err(Error::Config("at least one algorithm is required".into()));
        }
        self.algorithm_config(0).validate()
    }

    pub fn ks(&self) -> impl Iterator<Item = usize> {
        self.k_range[0]..=self.k_range[1]
    }

    pub fn k_cap(&self, graph: &str) -> usize {
        self.k_caps.get(graph).copied().unwrap_or(usize::MAX)
    }

    /// Algorithm settings for one trial; the seed is specific to the trial.
    pub fn algorithm_config(&self, rng_seed: u64) -> AlgorithmConfig {
        AlgorithmConfig {
            rng_seed,
            hop_limit: self.hop_limit,
            hd_degree_factor: self.hd_degree_factor,
            ..AlgorithmConfig::default()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_defaults() {
        let plan = ExperimentPlan::parse(
            r#"
k_range = [8, 12]
trials = 5
algorithms = ["tfc-n", "minsd"]
task_source = "vldb"

[k_caps]
dblp = 10
"#,
        )
        .unwrap();
        assert_eq!(plan.ks().collect::<Vec<_>>(), vec![8, 9, 10, 11, 12]);
        assert_eq!(plan.algorithms, vec![Algorithm::TfcN, Algorithm::MinSd]);
        assert_eq!(plan.k_cap("dblp"), 10);
        assert_eq!(plan.k_cap("vldb"), usize::MAX);
        assert_eq!(plan.seed, DEFAULT_SEED);
        assert_eq!(ExperimentPlan::parse("").unwrap(), ExperimentPlan::default());
    }

    #[test]
    fn rejects_bad_plans() {
        for text in [
            "trials = 0",
            "k_range = [5, 4]",
            "k_range = [0, 4]",
            "algorithms = []",
            "algorithms = [\"nope\"]",
            "hop_limit = 0",
            "surprise = 1",
        ] {
            assert!(ExperimentPlan::parse(text).is_err(), "{text}");
        }
    }
}

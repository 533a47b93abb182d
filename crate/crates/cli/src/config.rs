//! Run configuration: one JSON document with per-module sections.
//!
//! Every key is optional; omitted keys keep their defaults, and unknown
//! keys are rejected so typos fail loudly. The single top-level seed is
//! copied into every module that consumes randomness, so one value
//! controls the whole run.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use statelink_core::balance::AdasynConfig;
use statelink_core::classifier::{CostModel, TrainConfig};
use statelink_core::clustering::{ClusterConfig, PcaTarget};
use statelink_core::datalink::WindowConfig;
use statelink_core::scenario::ScenarioConfig;

use crate::error::{io_at, CliError, Result};

/// Fully resolved configuration for any subcommand.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub seed: u64,
    pub split_fraction: f64,
    pub scenario: ScenarioConfig,
    pub window: WindowConfig,
    pub cluster: ClusterConfig,
    pub balance: AdasynConfig,
    pub train: TrainConfig,
    /// Per-class weights; empty means uniform over the classes observed
    /// at training time.
    pub class_weights: Vec<f64>,
    pub miss_weight: f64,
    pub false_alarm_weight: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        let mut cfg = Self {
            seed: 42,
            split_fraction: 0.7,
            scenario: ScenarioConfig::default(),
            window: WindowConfig::default(),
            cluster: ClusterConfig {
                // The generator hides five states in four directions of a
                // 56-wide ambient space; a fixed component count beats a
                // variance share there, which mostly retains noise floor.
                pca_target: PcaTarget::Components(10),
                ..ClusterConfig::default()
            },
            balance: AdasynConfig::default(),
            train: TrainConfig::default(),
            class_weights: Vec::new(),
            miss_weight: 1.0,
            false_alarm_weight: 1.0,
        };
        cfg.apply_seed();
        cfg
    }
}

impl RunConfig {
    /// Copies the global seed into every module config that holds one.
    fn apply_seed(&mut self) {
        self.scenario.seed = self.seed;
        self.balance.seed = self.seed;
        self.train.seed = self.seed;
    }

    /// Overrides the global seed (from `--seed`).
    pub fn set_seed(&mut self, seed: u64) {
        self.seed = seed;
        self.apply_seed();
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.split_fraction > 0.0 && self.split_fraction < 1.0) {
            return Err(CliError::Config(format!(
                "split_fraction must lie in (0, 1), got {}",
                self.split_fraction
            )));
        }
        if self.miss_weight <= 0.0 || self.false_alarm_weight <= 0.0 {
            return Err(CliError::Config(
                "miss_weight and false_alarm_weight must be positive".into(),
            ));
        }
        for &w in &self.class_weights {
            if !w.is_finite() || w <= 0.0 {
                return Err(CliError::Config(format!(
                    "class weights must be positive reals, got {w}"
                )));
            }
        }
        self.scenario.validate().map_err(config_err)?;
        Ok(())
    }

    /// Cost model over `classes` classes: configured weights when given
    /// (length must match), uniform otherwise.
    pub fn cost_model(&self, classes: usize) -> Result<CostModel> {
        let class_weights = if self.class_weights.is_empty() {
            vec![1.0; classes]
        } else if self.class_weights.len() == classes {
            self.class_weights.clone()
        } else {
            return Err(CliError::Config(format!(
                "{} class weights configured but the data has {classes} classes",
                self.class_weights.len()
            )));
        };
        Ok(CostModel {
            class_weights,
            miss_weight: self.miss_weight,
            false_alarm_weight: self.false_alarm_weight,
        })
    }

    /// Loads and resolves a config file; `None` yields the defaults.
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let mut config = Self::default();
        if let Some(path) = path {
            let text = fs::read_to_string(path).map_err(|e| io_at(path, e))?;
            let patch: ConfigPatch = serde_json::from_str(&text).map_err(|e| {
                CliError::Config(format!("cannot parse {}: {e}", path.display()))
            })?;
            patch.apply(&mut config)?;
        }
        config.validate()?;
        Ok(config)
    }
}

fn config_err(e: statelink_core::Error) -> CliError {
    CliError::Config(e.to_string())
}

/// JSON shape of the config file: every field optional.
#[derive(Debug, Default, Deserialize, Serialize)]
#[serde(default, deny_unknown_fields)]
struct ConfigPatch {
    seed: Option<u64>,
    split_fraction: Option<f64>,
    scenario: ScenarioPatch,
    window: WindowPatch,
    cluster: ClusterPatch,
    balance: BalancePatch,
    train: TrainPatch,
    cost: CostPatch,
}

#[derive(Debug, Default, Deserialize, Serialize)]
#[serde(default, deny_unknown_fields)]
struct ScenarioPatch {
    records: Option<usize>,
    features: Option<usize>,
    proportions: Option<Vec<f64>>,
    separation: Option<f64>,
    overlap: Option<f64>,
}

#[derive(Debug, Default, Deserialize, Serialize)]
#[serde(default, deny_unknown_fields)]
struct WindowPatch {
    period: Option<f64>,
    alpha: Option<f64>,
    dedup_tolerance: Option<f64>,
}

#[derive(Debug, Default, Deserialize, Serialize)]
#[serde(default, deny_unknown_fields)]
struct ClusterPatch {
    /// Mutually exclusive with `variance_fraction`.
    components: Option<usize>,
    variance_fraction: Option<f64>,
    branching: Option<usize>,
    leaf_capacity: Option<usize>,
    initial_threshold: Option<f64>,
    max_subclusters: Option<usize>,
    k_max: Option<usize>,
}

#[derive(Debug, Default, Deserialize, Serialize)]
#[serde(default, deny_unknown_fields)]
struct BalancePatch {
    imbalance_threshold: Option<f64>,
    beta: Option<f64>,
    neighbors: Option<usize>,
}

#[derive(Debug, Default, Deserialize, Serialize)]
#[serde(default, deny_unknown_fields)]
struct TrainPatch {
    iterations: Option<usize>,
    max_depth: Option<usize>,
    shrinkage: Option<f64>,
    min_leaf: Option<usize>,
}

#[derive(Debug, Default, Deserialize, Serialize)]
#[serde(default, deny_unknown_fields)]
struct CostPatch {
    class_weights: Option<Vec<f64>>,
    miss_weight: Option<f64>,
    false_alarm_weight: Option<f64>,
}

macro_rules! put {
    ($($field:expr => $slot:expr),+ $(,)?) => {
        $(if let Some(v) = $field { $slot = v; })+
    };
}

impl ConfigPatch {
    fn apply(self, config: &mut RunConfig) -> Result<()> {
        put!(
            self.seed => config.seed,
            self.split_fraction => config.split_fraction,
            self.scenario.records => config.scenario.records,
            self.scenario.features => config.scenario.features,
            self.scenario.proportions => config.scenario.proportions,
            self.scenario.separation => config.scenario.separation,
            self.scenario.overlap => config.scenario.overlap,
            self.window.period => config.window.period,
            self.window.alpha => config.window.alpha,
            self.window.dedup_tolerance => config.window.dedup_tolerance,
            self.balance.imbalance_threshold => config.balance.imbalance_threshold,
            self.balance.beta => config.balance.beta,
            self.balance.neighbors => config.balance.neighbors,
            self.train.iterations => config.train.iterations,
            self.train.max_depth => config.train.max_depth,
            self.train.shrinkage => config.train.shrinkage,
            self.train.min_leaf => config.train.min_leaf,
            self.cost.class_weights => config.class_weights,
            self.cost.miss_weight => config.miss_weight,
            self.cost.false_alarm_weight => config.false_alarm_weight,
        );

        match (self.cluster.components, self.cluster.variance_fraction) {
            (Some(_), Some(_)) => {
                return Err(CliError::Config(
                    "cluster.components and cluster.variance_fraction are mutually exclusive"
                        .into(),
                ))
            }
            (Some(m), None) => config.cluster.pca_target = PcaTarget::Components(m),
            (None, Some(v)) => config.cluster.pca_target = PcaTarget::VarianceFraction(v),
            (None, None) => {}
        }
        put!(
            self.cluster.branching => config.cluster.cftree.branching,
            self.cluster.leaf_capacity => config.cluster.cftree.leaf_capacity,
            self.cluster.initial_threshold => config.cluster.cftree.initial_threshold,
            self.cluster.max_subclusters => config.cluster.cftree.max_subclusters,
            self.cluster.k_max => config.cluster.k_max,
        );

        config.apply_seed();
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid_and_seed_propagates() {
        let cfg = RunConfig::default();
        cfg.validate().unwrap();
        assert_eq!(cfg.scenario.seed, 42);
        assert_eq!(cfg.balance.seed, 42);

        let mut cfg = RunConfig::default();
        cfg.set_seed(7);
        assert_eq!(cfg.scenario.seed, 7);
        assert_eq!(cfg.balance.seed, 7);
        assert_eq!(cfg.train.seed, 7);
    }

    #[test]
    fn partial_file_overrides_only_named_keys() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cfg.json");
        std::fs::write(
            &path,
            r#"{"seed": 9, "scenario": {"records": 500, "overlap": 1.5},
                "cluster": {"components": 4}, "train": {"iterations": 20},
                "cost": {"class_weights": [1, 5, 5, 5, 1]}}"#,
        )
        .unwrap();
        let cfg = RunConfig::load(Some(&path)).unwrap();
        assert_eq!(cfg.seed, 9);
        assert_eq!(cfg.scenario.seed, 9);
        assert_eq!(cfg.scenario.records, 500);
        assert_eq!(cfg.scenario.overlap, 1.5);
        assert_eq!(cfg.scenario.features, 56);
        assert_eq!(cfg.cluster.pca_target, PcaTarget::Components(4));
        assert_eq!(cfg.train.iterations, 20);
        assert_eq!(cfg.class_weights, vec![1.0, 5.0, 5.0, 5.0, 1.0]);
        assert_eq!(cfg.split_fraction, 0.7);
    }

    #[test]
    fn unknown_keys_and_bad_values_are_config_errors() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cfg.json");

        std::fs::write(&path, r#"{"scenario": {"recrods": 500}}"#).unwrap();
        assert!(matches!(
            RunConfig::load(Some(&path)),
            Err(CliError::Config(_))
        ));

        std::fs::write(&path, r#"{"split_fraction": 1.5}"#).unwrap();
        assert!(matches!(
            RunConfig::load(Some(&path)),
            Err(CliError::Config(_))
        ));

        std::fs::write(
            &path,
            r#"{"cluster": {"components": 3, "variance_fraction": 0.9}}"#,
        )
        .unwrap();
        assert!(matches!(
            RunConfig::load(Some(&path)),
            Err(CliError::Config(_))
        ));

        std::fs::write(&path, "not json").unwrap();
        assert!(matches!(
            RunConfig::load(Some(&path)),
            Err(CliError::Config(_))
        ));
    }

    #[test]
    fn missing_config_file_is_reported_as_missing() {
        let err = RunConfig::load(Some(Path::new("/nonexistent/cfg.json"))).unwrap_err();
        assert!(matches!(err, CliError::MissingFile(_)));
        assert_eq!(err.exit_code(), 4);
    }

    #[test]
    fn cost_model_defaults_to_uniform() {
        let cfg = RunConfig::default();
        let cost = cfg.cost_model(5).unwrap();
        assert_eq!(cost.class_weights, vec![1.0; 5]);

        let cfg = RunConfig {
            class_weights: vec![1.0, 2.0],
            ..RunConfig::default()
        };
        assert!(cfg.cost_model(5).is_err());
        let cost = cfg.cost_model(2).unwrap();
        assert_eq!(cost.class_weights, vec![1.0, 2.0]);
    }
}

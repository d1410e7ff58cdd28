//! Simulation configuration and the TOML config-file surface.

use serde::{Deserialize, Serialize};

use crate::bloom::BloomParams;
use crate::topology::{build_overlay, Overlay, OverlaySpec, Wiring};

use super::SimError;

/// Gossip protocol knobs, all in rounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GossipConfig {
    /// Peers each emission is sent to (`f`).
    pub fanout: u32,
    /// Rounds between gossip emissions.
    pub gossip_period: u32,
    /// Rounds after which an unheard peer is presumed departed.
    pub node_ttl: u32,
    /// Rounds after which an un-readvertised contribution is presumed
    /// removed. Must exceed `full_refresh_period` or live files would flap.
    pub file_ttl: u32,
    /// Rounds between full re-advertisements of a node's own filter.
    pub full_refresh_period: u32,
}

impl Default for GossipConfig {
    fn default() -> Self {
        GossipConfig {
            fanout: 3,
            gossip_period: 1,
            node_ttl: 20,
            file_ttl: 50,
            full_refresh_period: 10,
        }
    }
}

impl GossipConfig {
    pub fn validate(&self) -> Result<(), SimError> {
        if self.fanout == 0 {
            return Err(SimError::InvalidConfig("gossip.fanout must be >= 1".into()));
        }
        if self.gossip_period == 0 {
            return Err(SimError::InvalidConfig(
                "gossip.gossip_period must be >= 1".into(),
            ));
        }
        if self.node_ttl == 0 || self.file_ttl == 0 {
            return Err(SimError::InvalidConfig(
                "gossip.node_ttl and gossip.file_ttl must be >= 1".into(),
            ));
        }
        if self.full_refresh_period == 0 {
            return Err(SimError::InvalidConfig(
                "gossip.full_refresh_period must be >= 1".into(),
            ));
        }
        if self.file_ttl <= self.full_refresh_period {
            return Err(SimError::InvalidConfig(format!(
                "gossip.file_ttl ({}) must exceed gossip.full_refresh_period ({})",
                self.file_ttl, self.full_refresh_period
            )));
        }
        Ok(())
    }
}

/// Per-round join/leave probabilities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields, default)]
pub struct ChurnConfig {
    pub leave_probability: f64,
    pub join_probability: f64,
}

impl ChurnConfig {
    pub fn validate(&self) -> Result<(), SimError> {
        for (name, p) in [
            ("churn.leave_probability", self.leave_probability),
            ("churn.join_probability", self.join_probability),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return Err(SimError::InvalidConfig(format!(
                    "{name} must be in [0, 1], got {p}"
                )));
            }
        }
        Ok(())
    }
}

/// Request workload: per-cluster Zipf popularity plus time locality.
///
/// Each cluster has its own catalog of `files_per_cluster` logical files.
/// The most popular `coverage` slice of a cluster's catalog is hosted inside
/// that cluster; tail files live in other clusters and must be fetched via
/// inter-cluster search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RequestModel {
    /// Zipf exponent.
    pub alpha: f64,
    /// Catalog size per cluster.
    pub files_per_cluster: u64,
    /// Fraction of a cluster's catalog hosted inside the cluster.
    pub coverage: f64,
    /// Chance that a node re-requests its previous file instead of drawing
    /// a fresh one (time locality).
    #[serde(default = "default_repeat_probability")]
    pub repeat_probability: f64,
}

fn default_repeat_probability() -> f64 {
    0.2
}

impl RequestModel {
    pub fn validate(&self) -> Result<(), SimError> {
        if !self.alpha.is_finite() || self.alpha < 0.0 {
            return Err(SimError::InvalidConfig(format!(
                "workload.alpha must be finite and >= 0, got {}",
                self.alpha
            )));
        }
        if self.files_per_cluster == 0 {
            return Err(SimError::InvalidConfig(
                "workload.files_per_cluster must be >= 1".into(),
            ));
        }
        if !(0.0..=1.0).contains(&self.coverage) {
            return Err(SimError::InvalidConfig(format!(
                "workload.coverage must be in [0, 1], got {}",
                self.coverage
            )));
        }
        if !(0.0..=1.0).contains(&self.repeat_probability) {
            return Err(SimError::InvalidConfig(format!(
                "workload.repeat_probability must be in [0, 1], got {}",
                self.repeat_probability
            )));
        }
        Ok(())
    }
}

/// How a request leaves its cluster when local knowledge cannot answer it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ForwardStrategy {
    /// Follow one random external link at a time, never revisiting a
    /// cluster, until found or all clusters are exhausted.
    UnicastRandom,
    /// Ask every externally linked neighbor cluster in one parallel wave.
    GatewayMulticast,
    /// Breadth-first search over the cluster quotient graph until found or
    /// exhausted.
    Flood,
}

/// Full parameterization of a simulation run.
#[derive(Debug, Clone)]
pub struct SimConfig {
    pub overlay: Overlay,
    pub gossip: GossipConfig,
    pub bloom: BloomParams,
    pub workload: RequestModel,
    pub churn: ChurnConfig,
    pub strategy: ForwardStrategy,
    pub rounds: u32,
    pub seed: u64,
    /// Collect per-round counters into the metrics.
    pub record_per_round: bool,
    /// Collect a full event trace (debugging aid; memory-heavy).
    pub record_events: bool,
}

impl SimConfig {
    pub fn validate(&self) -> Result<(), SimError> {
        if self.rounds == 0 {
            return Err(SimError::InvalidConfig("rounds must be >= 1".into()));
        }
        self.gossip.validate()?;
        self.churn.validate()?;
        self.workload.validate()?;
        self.bloom
            .validate()
            .map_err(|e| SimError::InvalidConfig(format!("bloom: {e}")))?;
        Ok(())
    }

    /// Parses the TOML config-file format (see [`SimConfigFile`]) and builds
    /// the overlay it describes.
    pub fn from_toml_str(text: &str) -> Result<SimConfig, SimError> {
        let file: SimConfigFile =
            toml::from_str(text).map_err(|e| SimError::ConfigFile(e.to_string()))?;
        file.into_config()
    }

    pub fn from_path(path: &std::path::Path) -> Result<SimConfig, SimError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| SimError::ConfigFile(format!("{}: {e}", path.display())))?;
        SimConfig::from_toml_str(&text)
    }
}

/// `[overlay]` section of the config file.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OverlayFileSection {
    pub clusters: u32,
    pub nodes_per_cluster: u32,
    pub intra_degree: u32,
    pub wiring: Wiring,
    pub wiring_param: f64,
    /// Defaults to the top-level seed.
    pub seed: Option<u64>,
}

/// `[bloom]` section of the config file.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BloomFileSection {
    pub bits: u64,
    pub hashes: u32,
}

/// Schema of the `simulate` config file: top-level `seed`, `rounds`,
/// `strategy`, optional `record_per_round`, and the `[overlay]`, `[gossip]`,
/// `[bloom]`, `[workload]`, `[churn]` sections mirroring [`SimConfig`].
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimConfigFile {
    pub seed: u64,
    pub rounds: u32,
    pub strategy: ForwardStrategy,
    #[serde(default)]
    pub record_per_round: bool,
    pub overlay: OverlayFileSection,
    #[serde(default)]
    pub gossip: GossipConfig,
    pub bloom: BloomFileSection,
    pub workload: RequestModel,
    #[serde(default)]
    pub churn: ChurnConfig,
}

impl SimConfigFile {
    pub fn into_config(self) -> Result<SimConfig, SimError> {
        let spec = OverlaySpec {
            n_clusters: self.overlay.clusters,
            nodes_per_cluster: self.overlay.nodes_per_cluster,
            intra_degree: self.overlay.intra_degree,
            wiring: self.overlay.wiring,
            wiring_param: self.overlay.wiring_param,
            seed: self.overlay.seed.unwrap_or(self.seed),
        };
        let config = SimConfig {
            overlay: build_overlay(&spec)?,
            gossip: self.gossip,
            bloom: BloomParams::new(self.bloom.bits, self.bloom.hashes)
                .map_err(|e| SimError::InvalidConfig(format!("bloom: {e}")))?,
            workload: self.workload,
            churn: self.churn,
            strategy: self.strategy,
            rounds: self.rounds,
            seed: self.seed,
            record_per_round: self.record_per_round,
            record_events: false,
        };
        config.validate()?;
        Ok(config)
    }
}

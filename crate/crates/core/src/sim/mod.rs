//! Deterministic round-based simulator of the clustered location scheme.
//!
//! Nodes gossip Bloom-filter summaries of their files inside clusters, age
//! out unheard peers and un-readvertised files (soft state), answer requests
//! from their aggregated cluster knowledge, and forward misses to other
//! clusters by unicast, multicast, or flooding. Rounds execute the fixed
//! phase order advertise -> gossip -> expiry -> requests -> churn; identical
//! configs (seed included) produce byte-identical metrics.

mod config;
mod engine;
mod metrics;
mod payload;

pub use config::{
    ChurnConfig, ForwardStrategy, GossipConfig, OverlayFileSection, RequestModel, SimConfig,
    SimConfigFile,
};
pub use engine::{sim_run, Contribution, NodeState, Sim, SimOutput};
pub use metrics::{write_rounds_csv, RequestOutcome, Resolution, RoundMetrics, SimMetrics};
pub use payload::{ContributionMsg, GossipPayload, PayloadError};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("invalid simulation config: {0}")]
    InvalidConfig(String),
    #[error("config file: {0}")]
    ConfigFile(String),
    #[error(transparent)]
    Topology(#[from] crate::topology::TopologyError),
}

/// One trace record of simulator activity. Traces are optional
/// (`record_events`) and exist for debugging and for asserting the
/// deterministic `(round, phase, node)` processing order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Event {
    pub round: u32,
    pub kind: EventKind,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EventKind {
    Advertise { node: u64 },
    GossipEmit { node: u64, targets: u32, bytes: u64 },
    GossipReceive { node: u64, from: u64 },
    Expiry { node: u64, peers_dropped: u32, contributions_dropped: u32 },
    Request { node: u64, file: u64, outcome: RequestOutcome, hops: u32 },
    Join { node: u64 },
    Leave { node: u64 },
}

impl EventKind {
    /// Position of the kind in the per-round phase order.
    pub fn phase(&self) -> u8 {
        match self {
            EventKind::Advertise { .. } => 0,
            EventKind::GossipEmit { .. } => 1,
            EventKind::GossipReceive { .. } => 2,
            EventKind::Expiry { .. } => 3,
            EventKind::Request { .. } => 4,
            EventKind::Join { .. } | EventKind::Leave { .. } => 5,
        }
    }
}

/// Back-of-the-envelope gossip traffic model, in bytes per second per node.
///
/// Each node owns `files_per_cluster / nodes_per_cluster` catalog entries at
/// `bytes_per_entry` and pushes that share to `fanout` peers every gossip
/// period: `own_share_bytes * fanout / gossip_period_seconds`. The file
/// lifetime bounds how stale an un-refreshed entry may grow (it must be
/// positive and exceed the gossip period) but cancels out of the steady
/// state, since re-advertisement rides the same periodic emissions.
pub fn estimate_traffic(
    files_per_cluster: u64,
    nodes_per_cluster: u64,
    file_lifetime_seconds: f64,
    bytes_per_entry: f64,
    fanout: f64,
    gossip_period_seconds: f64,
) -> Result<f64, SimError> {
    if files_per_cluster == 0 || nodes_per_cluster == 0 {
        return Err(SimError::InvalidConfig(
            "files_per_cluster and nodes_per_cluster must be positive".into(),
        ));
    }
    if !(bytes_per_entry > 0.0) || !(gossip_period_seconds > 0.0) {
        return Err(SimError::InvalidConfig(
            "bytes_per_entry and gossip_period_seconds must be positive".into(),
        ));
    }
    if !(fanout >= 0.0) {
        return Err(SimError::InvalidConfig("fanout must be >= 0".into()));
    }
    if !(file_lifetime_seconds > gossip_period_seconds) {
        return Err(SimError::InvalidConfig(
            "file lifetime must exceed the gossip period".into(),
        ));
    }
    let own_share_bytes = files_per_cluster as f64 / nodes_per_cluster as f64 * bytes_per_entry;
    Ok(own_share_bytes * fanout / gossip_period_seconds)
}

//! Gossip-based file location for clustered peer-to-peer overlays.
//!
//! The crate bundles the pieces needed to study and prototype a location
//! scheme where nodes aggressively disseminate Bloom-filter summaries of
//! their content inside interest clusters and forward unresolved requests
//! between clusters:
//!
//! - [`bloom`]: Bloom filters with union, serialization, and the analytic
//!   false-positive model used for sizing.
//! - [`graph`]: undirected graphs plus the small-world metric suite
//!   (clustering coefficient, average path length, random-graph baseline).
//! - [`trace`]: file-access log ingestion and windowed file-sharing graphs.
//! - [`workload`]: Zipf popularity model and the fraction-served-locally
//!   curve.
//! - [`topology`]: clustered overlay construction and inter-cluster wiring
//!   strategies (random, gateway, rewiring).
//! - [`sim`]: a deterministic round-based simulator of gossip dissemination,
//!   soft-state expiry, and request forwarding.
//!
//! The `filoc` binary exposes the same functionality as CLI subcommands.

pub mod bloom;
pub mod graph;
pub mod sim;
pub mod topology;
pub mod trace;
pub mod workload;

/// Default RNG seed used by the CLI whenever `--seed` is not given.
///
/// Fixed (never wall-clock) so that every invocation is reproducible.
pub const DEFAULT_SEED: u64 = 42;

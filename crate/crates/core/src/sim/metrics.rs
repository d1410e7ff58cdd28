//! Aggregate and per-round simulation counters.

use serde::Serialize;

/// How one request ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RequestOutcome {
    /// Answered inside the requester's own cluster.
    Local,
    /// Found in another cluster.
    Remote,
    /// Every reachable cluster was searched and nothing held the file.
    NotFound,
    /// The strategy gave up before exhausting the search space.
    Unresolved,
}

/// Resolution record of one request.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Resolution {
    pub outcome: RequestOutcome,
    /// Remote clusters contacted (0 for a local answer).
    pub hops: u32,
    /// Clusters consulted including the requester's own.
    pub clusters_visited: u32,
    /// Cluster that served the file, when found.
    pub origin_cluster: Option<u32>,
}

/// Counters for a single round.
#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct RoundMetrics {
    pub round: u32,
    pub requests: u64,
    pub served_local: u64,
    pub false_positives: u64,
    pub false_negatives: u64,
    pub gossip_bytes: u64,
}

/// Writes per-round rows as CSV `round,served_local,fp,fn,bytes`.
pub fn write_rounds_csv<W: std::io::Write>(
    rows: &[RoundMetrics],
    mut out: W,
) -> std::io::Result<()> {
    writeln!(out, "round,served_local,fp,fn,bytes")?;
    for row in rows {
        writeln!(
            out,
            "{},{},{},{},{}",
            row.round, row.served_local, row.false_positives, row.false_negatives, row.gossip_bytes
        )?;
    }
    Ok(())
}

/// Aggregate results of a run. Serializes to the stable JSON schema emitted
/// by `filoc simulate`.
#[derive(Debug, Clone, Serialize, Default)]
pub struct SimMetrics {
    pub rounds: u32,
    pub n_nodes: u64,
    pub n_clusters: u32,
    /// Mean count of files hosted per cluster (the `n` to use in analytic
    /// false-positive estimates for the aggregate filters).
    pub mean_files_per_cluster: f64,
    pub requests_total: u64,
    pub served_local: u64,
    pub served_remote: u64,
    pub not_found: u64,
    pub unresolved: u64,
    /// `hops_histogram[h]` counts requests that contacted `h` remote
    /// clusters.
    pub hops_histogram: Vec<u64>,
    /// Maximum clusters consulted by any single request, own cluster
    /// included. Bounded by the cluster count.
    pub clusters_visited_max: u32,
    /// Filter said present, validation failed.
    pub false_positive_lookups: u64,
    /// File was present in the consulted cluster, filter was unaware.
    pub false_negative_lookups: u64,
    /// Consultations where the file truly was in the consulted cluster.
    pub member_lookups: u64,
    /// Consultations where it was not.
    pub nonmember_lookups: u64,
    pub gossip_messages: u64,
    pub gossip_bytes_total: u64,
    pub gossip_bytes_per_node_per_round: f64,
    /// Malformed payloads dropped on receive.
    pub dropped_payloads: u64,
    pub joins: u64,
    pub leaves: u64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub per_round: Vec<RoundMetrics>,
}

impl SimMetrics {
    pub fn record(&mut self, resolution: &Resolution) {
        self.requests_total += 1;
        match resolution.outcome {
            RequestOutcome::Local => self.served_local += 1,
            RequestOutcome::Remote => self.served_remote += 1,
            RequestOutcome::NotFound => self.not_found += 1,
            RequestOutcome::Unresolved => self.unresolved += 1,
        }
        let hops = resolution.hops as usize;
        if self.hops_histogram.len() <= hops {
            self.hops_histogram.resize(hops + 1, 0);
        }
        self.hops_histogram[hops] += 1;
        self.clusters_visited_max = self.clusters_visited_max.max(resolution.clusters_visited);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn histogram_grows_and_outcomes_tally() {
        let mut m = SimMetrics::default();
        m.record(&Resolution {
            outcome: RequestOutcome::Local,
            hops: 0,
            clusters_visited: 1,
            origin_cluster: Some(0),
        });
        m.record(&Resolution {
            outcome: RequestOutcome::Remote,
            hops: 3,
            clusters_visited: 4,
            origin_cluster: Some(2),
        });
        assert_eq!(m.requests_total, 2);
        assert_eq!(m.served_local, 1);
        assert_eq!(m.served_remote, 1);
        assert_eq!(m.hops_histogram, vec![1, 0, 0, 1]);
        assert_eq!(m.clusters_visited_max, 4);
    }

    #[test]
    fn rounds_csv_schema() {
        let rows = vec![RoundMetrics {
            round: 0,
            requests: 10,
            served_local: 7,
            false_positives: 1,
            false_negatives: 2,
            gossip_bytes: 1234,
        }];
        let mut buf = Vec::new();
        write_rounds_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "round,served_local,fp,fn,bytes\n0,7,1,2,1234\n");
    }

    #[test]
    fn per_round_omitted_from_json_when_empty() {
        let m = SimMetrics::default();
        let json: serde_json::Value = serde_json::to_value(&m).unwrap();
        assert!(json.get("per_round").is_none());
        let mut with_rows = SimMetrics::default();
        with_rows.per_round.push(RoundMetrics::default());
        let json: serde_json::Value = serde_json::to_value(&with_rows).unwrap();
        assert!(json.get("per_round").is_some());
    }
}

//! Round-based simulation engine.
//!
//! Each round executes the fixed phase order advertise -> gossip -> expiry
//! -> requests -> churn, iterating nodes in id order inside every phase, so
//! a run is bit-reproducible from its seed.
//!
//! Content model: cluster `c`'s catalog is `files_per_cluster` logical
//! files ranked by popularity. The top `coverage` slice is hosted at nodes
//! of cluster `c` itself; tail files are hosted in other clusters (requests
//! for them must travel). Every file lives at exactly one host node, which
//! is the ground truth that filter hits are validated against.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::index::sample;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bloom::BloomFilter;
use crate::workload::{ZipfSampler, ZipfWorkload};

use super::config::{ForwardStrategy, SimConfig};
use super::metrics::{RequestOutcome, Resolution, RoundMetrics, SimMetrics};
use super::payload::{ContributionMsg, GossipPayload};
use super::{Event, EventKind, SimError};

/// One contributor's entry in a node's knowledge: the advertised filter and
/// the round it was last refreshed.
#[derive(Debug, Clone)]
pub struct Contribution {
    pub epoch: u32,
    pub filter: BloomFilter,
}

/// Per-node runtime state.
#[derive(Debug, Clone)]
pub struct NodeState {
    pub node_id: u64,
    pub cluster_id: u32,
    pub alive: bool,
    /// Files hosted here, with the round each was last advertised.
    pub local_files: BTreeMap<u64, u32>,
    /// Peer id -> last round it was heard from (directly or via digest).
    pub membership: BTreeMap<u64, u32>,
    /// Per-contributor epoch-tagged sub-filters; the aggregate is their
    /// union. Keeping them separate is what makes soft-state expiry possible
    /// even though filters cannot delete.
    pub contributions: BTreeMap<u64, Contribution>,
    /// Union of all live contributions.
    pub aggregate: BloomFilter,
    /// Remote endpoints of this node's inter-cluster links.
    pub external_links: BTreeSet<u64>,
    /// Contributors whose info is new since this node's last emission.
    pending_relay: BTreeSet<u64>,
    last_advertised: u32,
    prev_request: Option<u64>,
}

impl NodeState {
    fn rebuild_own_filter(&self, config: &SimConfig) -> BloomFilter {
        let mut filter = BloomFilter::new(config.bloom).expect("validated params");
        for &file in self.local_files.keys() {
            filter.insert(&file.to_le_bytes());
        }
        filter
    }

    fn rebuild_aggregate(&mut self) {
        let mut aggregate = BloomFilter::new(*self.aggregate.params()).expect("validated params");
        for contribution in self.contributions.values() {
            aggregate
                .union_in_place(&contribution.filter)
                .expect("uniform params");
        }
        self.aggregate = aggregate;
    }
}

/// A deterministic simulation run in progress.
pub struct Sim {
    config: SimConfig,
    nodes: Vec<NodeState>,
    /// file id -> host node id (dense; file ids are `0..C*N`).
    file_host: Vec<u64>,
    /// Files hosted per cluster (static placement).
    cluster_content: Vec<u64>,
    /// Per cluster: sorted inter-cluster links as (local node, remote node).
    cross_links: Vec<Vec<(u64, u64)>>,
    /// Per cluster: sorted neighbor clusters in the quotient graph.
    quotient_adj: Vec<Vec<u32>>,
    covered_ranks: u64,
    rng_gossip: ChaCha8Rng,
    rng_request: ChaCha8Rng,
    rng_churn: ChaCha8Rng,
    zipf: ZipfSampler,
    metrics: SimMetrics,
    round_metrics: RoundMetrics,
    events: Vec<Event>,
}

/// Everything a finished run produces.
#[derive(Debug)]
pub struct SimOutput {
    pub metrics: SimMetrics,
    pub events: Vec<Event>,
}

/// Runs a full simulation and returns its aggregate metrics.
pub fn sim_run(config: SimConfig) -> Result<SimMetrics, SimError> {
    Ok(Sim::new(config)?.run().metrics)
}

impl Sim {
    pub fn new(config: SimConfig) -> Result<Sim, SimError> {
        config.validate()?;
        let overlay = &config.overlay;
        let c = overlay.n_clusters();
        let g = u64::from(overlay.nodes_per_cluster());
        let n_files = config.workload.files_per_cluster;
        let covered_ranks = ((config.workload.coverage * n_files as f64).floor() as u64).min(n_files);

        // Static placement: rank <= covered stays home, tail files go to a
        // deterministic other cluster.
        let total_files = u64::from(c) * n_files;
        let mut file_host = vec![0u64; total_files as usize];
        let mut cluster_content = vec![0u64; c as usize];
        for cluster in 0..u64::from(c) {
            for rank in 1..=n_files {
                let file = cluster * n_files + (rank - 1);
                let host_cluster = if rank <= covered_ranks || c == 1 {
                    cluster
                } else {
                    (cluster + 1 + rank % (u64::from(c) - 1)) % u64::from(c)
                };
                let host = host_cluster * g + file % g;
                file_host[file as usize] = host;
                cluster_content[host_cluster as usize] += 1;
            }
        }

        let mut cross_links = vec![Vec::new(); c as usize];
        for (a, b) in overlay.inter_cluster_edges() {
            cross_links[overlay.cluster_of(a) as usize].push((a, b));
            cross_links[overlay.cluster_of(b) as usize].push((b, a));
        }
        for links in &mut cross_links {
            links.sort_unstable();
        }
        let quotient = overlay.quotient_graph();
        let quotient_adj: Vec<Vec<u32>> = (0..c)
            .map(|cluster| match quotient.neighbors(&cluster) {
                Some(iter) => iter.copied().collect(),
                None => Vec::new(),
            })
            .collect();

        let mut master = ChaCha8Rng::seed_from_u64(config.seed);
        let rng_gossip = ChaCha8Rng::seed_from_u64(master.next_u64());
        let rng_request = ChaCha8Rng::seed_from_u64(master.next_u64());
        let rng_churn = ChaCha8Rng::seed_from_u64(master.next_u64());
        let zipf = ZipfWorkload::new(config.workload.alpha, n_files, master.next_u64())
            .map_err(|e| SimError::InvalidConfig(e.to_string()))?
            .sampler();

        // Node state: membership bootstraps from intra-cluster overlay
        // neighbors; every node starts with its own contribution installed.
        let mut nodes = Vec::with_capacity((u64::from(c) * g) as usize);
        for node_id in 0..u64::from(c) * g {
            let cluster_id = overlay.cluster_of(node_id);
            let mut membership = BTreeMap::new();
            let mut external_links = BTreeSet::new();
            if let Some(neighbors) = overlay.graph().neighbors(&node_id) {
                for &peer in neighbors {
                    if overlay.cluster_of(peer) == cluster_id {
                        membership.insert(peer, 0u32);
                    } else {
                        external_links.insert(peer);
                    }
                }
            }
            nodes.push(NodeState {
                node_id,
                cluster_id,
                alive: true,
                local_files: BTreeMap::new(),
                membership,
                contributions: BTreeMap::new(),
                aggregate: BloomFilter::new(config.bloom)
                    .map_err(|e| SimError::InvalidConfig(format!("bloom: {e}")))?,
                external_links,
                pending_relay: BTreeSet::new(),
                last_advertised: 0,
                prev_request: None,
            });
        }
        for (file, &host) in file_host.iter().enumerate() {
            nodes[host as usize].local_files.insert(file as u64, 0);
        }
        for node in &mut nodes {
            let own = NodeState::rebuild_own_filter(node, &config);
            node.aggregate = own.clone();
            node.contributions.insert(
                node.node_id,
                Contribution {
                    epoch: 0,
                    filter: own,
                },
            );
            node.pending_relay.insert(node.node_id);
        }

        let mean_files_per_cluster =
            cluster_content.iter().sum::<u64>() as f64 / f64::from(c);
        let metrics = SimMetrics {
            rounds: config.rounds,
            n_nodes: u64::from(c) * g,
            n_clusters: c,
            mean_files_per_cluster,
            ..SimMetrics::default()
        };

        Ok(Sim {
            config,
            nodes,
            file_host,
            cluster_content,
            cross_links,
            quotient_adj,
            covered_ranks,
            rng_gossip,
            rng_request,
            rng_churn,
            zipf,
            metrics,
            round_metrics: RoundMetrics::default(),
            events: Vec::new(),
        })
    }

    pub fn config(&self) -> &SimConfig {
        &self.config
    }

    pub fn nodes(&self) -> &[NodeState] {
        &self.nodes
    }

    /// Files hosted in each cluster under the static placement.
    pub fn cluster_content(&self) -> &[u64] {
        &self.cluster_content
    }

    /// Ground truth: is `file` currently available inside `cluster`?
    pub fn file_in_cluster(&self, file: u64, cluster: u32) -> bool {
        match self.file_host.get(file as usize) {
            Some(&host) => {
                let host = &self.nodes[host as usize];
                host.alive && host.cluster_id == cluster
            }
            None => false,
        }
    }

    fn trace(&mut self, round: u32, kind: EventKind) {
        if self.config.record_events {
            self.events.push(Event { round, kind });
        }
    }

    /// Executes all configured rounds.
    pub fn run(mut self) -> SimOutput {
        for round in 0..self.config.rounds {
            self.round_metrics = RoundMetrics {
                round,
                ..RoundMetrics::default()
            };
            self.advertise_phase(round);
            self.gossip_phase(round);
            self.expiry_phase(round);
            self.request_phase(round);
            self.churn_phase(round);
            if self.config.record_per_round {
                let row = self.round_metrics;
                self.metrics.per_round.push(row);
            }
        }
        self.metrics.gossip_bytes_per_node_per_round = self.metrics.gossip_bytes_total as f64
            / (self.metrics.n_nodes as f64 * f64::from(self.config.rounds));
        SimOutput {
            metrics: self.metrics,
            events: self.events,
        }
    }

    /// Refreshes each node's own contribution on its stagger slot. The fresh
    /// epoch enters the relay queue, so re-advertisement rides normal gossip.
    fn advertise_phase(&mut self, round: u32) {
        let period = u64::from(self.config.gossip.full_refresh_period);
        for idx in 0..self.nodes.len() {
            let node = &self.nodes[idx];
            if !node.alive {
                continue;
            }
            let due = (u64::from(round) + node.node_id) % period == 0
                && round != node.last_advertised;
            if round == 0 || due {
                let filter = self.nodes[idx].rebuild_own_filter(&self.config);
                let node = &mut self.nodes[idx];
                for advertised in node.local_files.values_mut() {
                    *advertised = round;
                }
                node.aggregate
                    .union_in_place(&filter)
                    .expect("uniform params");
                node.contributions.insert(
                    node.node_id,
                    Contribution {
                        epoch: round,
                        filter,
                    },
                );
                node.pending_relay.insert(node.node_id);
                node.last_advertised = round;
                let id = node.node_id;
                self.trace(round, EventKind::Advertise { node: id });
            }
        }
    }

    /// Builds this round's emission for one node: contributions new since
    /// the last emission plus the membership digest, addressed to
    /// `min(fanout, peers)` targets. On the node's full-refresh slot the
    /// payload instead carries its entire live state, which is what lets
    /// peers that missed delta waves re-converge before soft state expires.
    pub(crate) fn gossip_round(&mut self, idx: usize, round: u32) -> Vec<(u64, Vec<u8>)> {
        let fanout = self.config.gossip.fanout as usize;
        let full_refresh = (u64::from(round) + self.nodes[idx].node_id)
            % u64::from(self.config.gossip.full_refresh_period)
            == 0;
        let node = &self.nodes[idx];
        if node.membership.is_empty() {
            return Vec::new();
        }
        let as_msg = |(contributor, entry): (&u64, &Contribution)| ContributionMsg {
            contributor: *contributor,
            epoch: entry.epoch,
            filter: entry.filter.clone(),
        };
        let contributions: Vec<ContributionMsg> = if full_refresh {
            node.contributions.iter().map(as_msg).collect()
        } else {
            node.pending_relay
                .iter()
                .filter_map(|contributor| {
                    node.contributions
                        .get(contributor)
                        .map(|entry| as_msg((contributor, entry)))
                })
                .collect()
        };
        let mut membership: Vec<(u64, u32)> =
            node.membership.iter().map(|(&p, &r)| (p, r)).collect();
        membership.push((node.node_id, round));
        let payload = GossipPayload {
            sender: node.node_id,
            membership,
            contributions,
        }
        .to_bytes();

        let peers: Vec<u64> = node.membership.keys().copied().collect();
        let count = fanout.min(peers.len());
        let chosen = sample(&mut self.rng_gossip, peers.len(), count);
        let out: Vec<(u64, Vec<u8>)> = chosen
            .iter()
            .map(|i| (peers[i], payload.clone()))
            .collect();
        self.nodes[idx].pending_relay.clear();
        out
    }

    /// Merges one received payload: membership timestamps advance, newly
    /// learned peers are added, and contributions with a newer epoch replace
    /// the stored ones and queue for relay.
    pub(crate) fn gossip_receive(&mut self, idx: usize, raw: &[u8], round: u32) {
        let payload = match GossipPayload::from_bytes(raw) {
            Ok(p) => p,
            Err(_) => {
                self.metrics.dropped_payloads += 1;
                return;
            }
        };
        let own_id = self.nodes[idx].node_id;
        let node = &mut self.nodes[idx];
        for (peer, heard) in payload.membership {
            if peer == own_id {
                continue;
            }
            let entry = node.membership.entry(peer).or_insert(heard);
            *entry = (*entry).max(heard);
        }
        if payload.sender != own_id {
            node.membership.insert(payload.sender, round);
        }
        for msg in payload.contributions {
            if msg.contributor == own_id {
                continue;
            }
            if msg.filter.params() != &self.config.bloom {
                self.metrics.dropped_payloads += 1;
                continue;
            }
            let node = &mut self.nodes[idx];
            let fresh = match node.contributions.get(&msg.contributor) {
                Some(existing) => msg.epoch > existing.epoch,
                None => true,
            };
            if fresh {
                node.aggregate
                    .union_in_place(&msg.filter)
                    .expect("uniform params");
                node.contributions.insert(
                    msg.contributor,
                    Contribution {
                        epoch: msg.epoch,
                        filter: msg.filter,
                    },
                );
                node.pending_relay.insert(msg.contributor);
            }
        }
        self.trace(
            round,
            EventKind::GossipReceive {
                node: own_id,
                from: payload.sender,
            },
        );
    }

    fn gossip_phase(&mut self, round: u32) {
        if round % self.config.gossip.gossip_period != 0 {
            return;
        }
        let mut deliveries: Vec<(u64, Vec<u8>)> = Vec::new();
        for idx in 0..self.nodes.len() {
            if !self.nodes[idx].alive {
                continue;
            }
            let messages = self.gossip_round(idx, round);
            if messages.is_empty() {
                continue;
            }
            let bytes: u64 = messages.iter().map(|(_, p)| p.len() as u64).sum();
            self.metrics.gossip_messages += messages.len() as u64;
            self.metrics.gossip_bytes_total += bytes;
            self.round_metrics.gossip_bytes += bytes;
            let sender = self.nodes[idx].node_id;
            self.trace(
                round,
                EventKind::GossipEmit {
                    node: sender,
                    targets: messages.len() as u32,
                    bytes,
                },
            );
            deliveries.extend(messages);
        }
        for (target, payload) in deliveries {
            if self.nodes[target as usize].alive {
                self.gossip_receive(target as usize, &payload, round);
            }
        }
    }

    /// Drops peers unheard for `node_ttl` rounds and contributions not
    /// refreshed within `file_ttl`, rebuilding the aggregate from the
    /// survivors (filters cannot delete, so removal is re-union).
    pub(crate) fn expiry_sweep(&mut self, idx: usize, round: u32) {
        let node_ttl = self.config.gossip.node_ttl;
        let file_ttl = self.config.gossip.file_ttl;
        let own_id = self.nodes[idx].node_id;
        let node = &mut self.nodes[idx];
        let peers_before = node.membership.len();
        node.membership
            .retain(|_, &mut heard| round - heard.min(round) <= node_ttl);
        let peers_dropped = (peers_before - node.membership.len()) as u32;

        let contributions_before = node.contributions.len();
        node.contributions
            .retain(|&who, entry| who == own_id || round - entry.epoch.min(round) <= file_ttl);
        let contributions_dropped = (contributions_before - node.contributions.len()) as u32;
        if contributions_dropped > 0 {
            node.rebuild_aggregate();
        }
        if (peers_dropped > 0 || contributions_dropped > 0) && self.config.record_events {
            self.trace(
                round,
                EventKind::Expiry {
                    node: own_id,
                    peers_dropped,
                    contributions_dropped,
                },
            );
        }
    }

    fn expiry_phase(&mut self, round: u32) {
        for idx in 0..self.nodes.len() {
            if self.nodes[idx].alive {
                self.expiry_sweep(idx, round);
            }
        }
    }

    /// Consults one node's aggregate filter for `file`, classifying the
    /// lookup against ground truth. Returns `(filter_says, truth)`.
    fn consult(&mut self, idx: usize, file: u64) -> (bool, bool) {
        let node = &self.nodes[idx];
        let says = node.aggregate.contains(&file.to_le_bytes());
        let truth = self.file_in_cluster(file, node.cluster_id);
        if truth {
            self.metrics.member_lookups += 1;
            if !says {
                self.metrics.false_negative_lookups += 1;
                self.round_metrics.false_negatives += 1;
            }
        } else {
            self.metrics.nonmember_lookups += 1;
            if says {
                self.metrics.false_positive_lookups += 1;
                self.round_metrics.false_positives += 1;
            }
        }
        (says, truth)
    }

    /// Resolves one request starting at `idx`'s node: own cluster knowledge
    /// first, then inter-cluster forwarding per `strategy`.
    pub(crate) fn handle_request(
        &mut self,
        idx: usize,
        file: u64,
        strategy: ForwardStrategy,
    ) -> Resolution {
        let own_cluster = self.nodes[idx].cluster_id;
        let total_clusters = self.config.overlay.n_clusters();
        let mut visited: BTreeSet<u32> = BTreeSet::new();
        visited.insert(own_cluster);

        let (says, truth) = self.consult(idx, file);
        if says && truth {
            return Resolution {
                outcome: RequestOutcome::Local,
                hops: 0,
                clusters_visited: 1,
                origin_cluster: Some(own_cluster),
            };
        }

        match strategy {
            ForwardStrategy::Flood => {
                // Flooding asks whole clusters, so a local false negative is
                // still served at home.
                if truth {
                    return Resolution {
                        outcome: RequestOutcome::Local,
                        hops: 0,
                        clusters_visited: 1,
                        origin_cluster: Some(own_cluster),
                    };
                }
                let mut queue = std::collections::VecDeque::new();
                queue.push_back(own_cluster);
                while let Some(cluster) = queue.pop_front() {
                    for &next in &self.quotient_adj[cluster as usize].clone() {
                        if !visited.insert(next) {
                            continue;
                        }
                        // Entry point: lowest remote endpoint reaching `next`.
                        let entry = self.cross_links[next as usize]
                            .iter()
                            .map(|&(local, _)| local)
                            .min()
                            .expect("quotient edge implies a cross link");
                        let (_, truth) = self.consult(entry as usize, file);
                        if truth {
                            return Resolution {
                                outcome: RequestOutcome::Remote,
                                hops: visited.len() as u32 - 1,
                                clusters_visited: visited.len() as u32,
                                origin_cluster: Some(next),
                            };
                        }
                        queue.push_back(next);
                    }
                }
                Resolution {
                    outcome: RequestOutcome::NotFound,
                    hops: visited.len() as u32 - 1,
                    clusters_visited: visited.len() as u32,
                    origin_cluster: None,
                }
            }
            ForwardStrategy::GatewayMulticast => {
                // One parallel wave over every external link of the cluster.
                let links = self.cross_links[own_cluster as usize].clone();
                let mut contacted: BTreeSet<u64> = BTreeSet::new();
                let mut found: Option<u32> = None;
                for (_, remote) in links {
                    if !contacted.insert(remote) {
                        continue;
                    }
                    let remote_cluster = self.nodes[remote as usize].cluster_id;
                    visited.insert(remote_cluster);
                    let (says, truth) = self.consult(remote as usize, file);
                    if says && truth && found.is_none() {
                        found = Some(remote_cluster);
                    }
                }
                let clusters_visited = visited.len() as u32;
                let hops = clusters_visited - 1;
                match found {
                    Some(origin) => Resolution {
                        outcome: RequestOutcome::Remote,
                        hops,
                        clusters_visited,
                        origin_cluster: Some(origin),
                    },
                    None => Resolution {
                        outcome: if clusters_visited == total_clusters {
                            RequestOutcome::NotFound
                        } else {
                            RequestOutcome::Unresolved
                        },
                        hops,
                        clusters_visited,
                        origin_cluster: None,
                    },
                }
            }
            ForwardStrategy::UnicastRandom => {
                let mut current = own_cluster;
                loop {
                    let candidates: Vec<(u64, u64)> = self.cross_links[current as usize]
                        .iter()
                        .copied()
                        .filter(|&(_, remote)| {
                            !visited.contains(&self.nodes[remote as usize].cluster_id)
                        })
                        .collect();
                    if candidates.is_empty() {
                        let clusters_visited = visited.len() as u32;
                        return Resolution {
                            outcome: if clusters_visited == total_clusters {
                                RequestOutcome::NotFound
                            } else {
                                RequestOutcome::Unresolved
                            },
                            hops: clusters_visited - 1,
                            clusters_visited,
                            origin_cluster: None,
                        };
                    }
                    let (_, remote) = candidates[self.rng_request.random_range(0..candidates.len())];
                    let remote_cluster = self.nodes[remote as usize].cluster_id;
                    visited.insert(remote_cluster);
                    let (says, truth) = self.consult(remote as usize, file);
                    if says && truth {
                        return Resolution {
                            outcome: RequestOutcome::Remote,
                            hops: visited.len() as u32 - 1,
                            clusters_visited: visited.len() as u32,
                            origin_cluster: Some(remote_cluster),
                        };
                    }
                    current = remote_cluster;
                }
            }
        }
    }

    fn request_phase(&mut self, round: u32) {
        let n_files = self.config.workload.files_per_cluster;
        let repeat = self.config.workload.repeat_probability;
        let strategy = self.config.strategy;
        for idx in 0..self.nodes.len() {
            if !self.nodes[idx].alive {
                continue;
            }
            let prev = self.nodes[idx].prev_request;
            let file = match prev {
                Some(prev_file) if self.rng_request.random::<f64>() < repeat => prev_file,
                _ => {
                    let rank = self.zipf.next_rank();
                    u64::from(self.nodes[idx].cluster_id) * n_files + (rank - 1)
                }
            };
            let resolution = self.handle_request(idx, file, strategy);
            self.metrics.record(&resolution);
            self.round_metrics.requests += 1;
            if resolution.outcome == RequestOutcome::Local {
                self.round_metrics.served_local += 1;
            }
            self.nodes[idx].prev_request = Some(file);
            let node_id = self.nodes[idx].node_id;
            self.trace(
                round,
                EventKind::Request {
                    node: node_id,
                    file,
                    outcome: resolution.outcome,
                    hops: resolution.hops,
                },
            );
        }
    }

    fn churn_phase(&mut self, round: u32) {
        let leave_p = self.config.churn.leave_probability;
        let join_p = self.config.churn.join_probability;
        if leave_p == 0.0 && join_p == 0.0 {
            return;
        }
        for idx in 0..self.nodes.len() {
            if self.nodes[idx].alive {
                if self.rng_churn.random::<f64>() < leave_p {
                    self.nodes[idx].alive = false;
                    self.metrics.leaves += 1;
                    let node_id = self.nodes[idx].node_id;
                    self.trace(round, EventKind::Leave { node: node_id });
                }
            } else if self.rng_churn.random::<f64>() < join_p {
                self.rejoin(idx, round);
                self.metrics.joins += 1;
                let node_id = self.nodes[idx].node_id;
                self.trace(round, EventKind::Join { node: node_id });
            }
        }
    }

    /// A rejoining node comes back with its hosted files, its static
    /// bootstrap acquaintances, and only its own contribution; everything
    /// else is relearned through gossip.
    fn rejoin(&mut self, idx: usize, round: u32) {
        let overlay = &self.config.overlay;
        let node_id = self.nodes[idx].node_id;
        let cluster_id = self.nodes[idx].cluster_id;
        let mut membership = BTreeMap::new();
        if let Some(neighbors) = overlay.graph().neighbors(&node_id) {
            for &peer in neighbors {
                if overlay.cluster_of(peer) == cluster_id && self.nodes[peer as usize].alive {
                    membership.insert(peer, round);
                }
            }
        }
        let node = &mut self.nodes[idx];
        node.alive = true;
        node.membership = membership;
        node.prev_request = None;
        for advertised in node.local_files.values_mut() {
            *advertised = round;
        }
        node.last_advertised = round;
        let own = NodeState::rebuild_own_filter(node, &self.config);
        let node = &mut self.nodes[idx];
        node.aggregate = own.clone();
        node.contributions.clear();
        node.contributions.insert(
            node.node_id,
            Contribution {
                epoch: round,
                filter: own,
            },
        );
        node.pending_relay = BTreeSet::from([node.node_id]);
    }

    /// Expected local-hit fraction of the configured workload (requests with
    /// rank inside the covered slice): partial over total Zipf power sums.
    pub fn expected_local_fraction(&self) -> f64 {
        let alpha = self.config.workload.alpha;
        let n = self.config.workload.files_per_cluster;
        let mut partial = 0.0;
        let mut total = 0.0;
        for rank in 1..=n {
            let weight = (rank as f64).powf(-alpha);
            total += weight;
            if rank <= self.covered_ranks {
                partial += weight;
            }
        }
        partial / total
    }
}

//! Clustered overlay construction and inter-cluster wiring.
//!
//! An overlay is a set of `C` clusters of `G` nodes each. Every cluster is a
//! connected ring lattice (plus random chords when the target degree is not
//! met by the lattice), and clusters are tied together by one of three
//! wiring strategies:
//!
//! - `random`: a Poisson number of cross edges per cluster between uniformly
//!   chosen endpoints;
//! - `gateway`: designated per-cluster gateway nodes create the external
//!   connections;
//! - `rewire`: intra-cluster edges are rewired across clusters with a fixed
//!   probability, the classic route from a clustered lattice to a small
//!   world.
//!
//! Whatever the strategy leaves behind, construction repairs the
//! cluster-level quotient graph with minimum random cross edges until it is
//! connected.

use std::collections::BTreeSet;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::UndirectedGraph;

#[derive(Debug, Error)]
pub enum TopologyError {
    #[error("invalid overlay spec: {0}")]
    InvalidSpec(String),
    #[error("invalid wiring parameter: {0}")]
    Parameter(String),
}

/// Inter-cluster wiring strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Wiring {
    Random,
    Gateway,
    Rewire,
}

impl std::str::FromStr for Wiring {
    type Err = TopologyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "random" => Ok(Wiring::Random),
            "gateway" => Ok(Wiring::Gateway),
            "rewire" => Ok(Wiring::Rewire),
            other => Err(TopologyError::Parameter(format!(
                "unknown wiring mode {other:?} (expected random, gateway, or rewire)"
            ))),
        }
    }
}

/// Full parameterization of an overlay.
///
/// `wiring_param` meaning: `random` reads it as the Poisson mean of cross
/// edges per cluster; `gateway` as links per gateway (one gateway per
/// cluster, rounded, at least 1); `rewire` as the rewiring probability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OverlaySpec {
    pub n_clusters: u32,
    pub nodes_per_cluster: u32,
    /// Target mean neighbor count inside a cluster; must be below
    /// `nodes_per_cluster`.
    pub intra_degree: u32,
    pub wiring: Wiring,
    pub wiring_param: f64,
    pub seed: u64,
}

impl OverlaySpec {
    pub fn validate(&self) -> Result<(), TopologyError> {
        if self.n_clusters == 0 {
            return Err(TopologyError::InvalidSpec("n_clusters must be >= 1".into()));
        }
        if self.nodes_per_cluster == 0 {
            return Err(TopologyError::InvalidSpec(
                "nodes_per_cluster must be >= 1".into(),
            ));
        }
        if self.intra_degree == 0 || self.intra_degree >= self.nodes_per_cluster {
            return Err(TopologyError::InvalidSpec(format!(
                "intra_degree must be in 1..nodes_per_cluster, got {} with G = {}",
                self.intra_degree, self.nodes_per_cluster
            )));
        }
        if !(self.wiring_param >= 0.0) {
            return Err(TopologyError::InvalidSpec(format!(
                "wiring_param must be >= 0, got {}",
                self.wiring_param
            )));
        }
        if self.wiring == Wiring::Rewire && self.wiring_param > 1.0 {
            return Err(TopologyError::InvalidSpec(format!(
                "rewire probability must be in [0, 1], got {}",
                self.wiring_param
            )));
        }
        Ok(())
    }

}

/// A clustered overlay: the node graph, the node-to-cluster map, and the
/// per-cluster gateway sets.
///
/// Node ids are dense: cluster `c` owns ids `c*G .. (c+1)*G`. Every endpoint
/// of an inter-cluster edge is in its cluster's gateway set; immutable once
/// built (wiring operations return a new overlay).
#[derive(Debug, Clone, PartialEq)]
pub struct Overlay {
    graph: UndirectedGraph<u64>,
    n_clusters: u32,
    nodes_per_cluster: u32,
    gateways: Vec<BTreeSet<u64>>,
}

impl Overlay {
    fn assemble(
        n_clusters: u32,
        nodes_per_cluster: u32,
        edges: &BTreeSet<(u64, u64)>,
        designated: Vec<BTreeSet<u64>>,
    ) -> Overlay {
        let total = u64::from(n_clusters) * u64::from(nodes_per_cluster);
        let mut gateways = if designated.is_empty() {
            vec![BTreeSet::new(); n_clusters as usize]
        } else {
            designated
        };
        for &(a, b) in edges {
            let (ca, cb) = (
                (a / u64::from(nodes_per_cluster)) as usize,
                (b / u64::from(nodes_per_cluster)) as usize,
            );
            if ca != cb {
                gateways[ca].insert(a);
                gateways[cb].insert(b);
            }
        }
        Overlay {
            graph: UndirectedGraph::build(0..total, edges.iter().copied()),
            n_clusters,
            nodes_per_cluster,
            gateways,
        }
    }

    pub fn graph(&self) -> &UndirectedGraph<u64> {
        &self.graph
    }

    pub fn n_clusters(&self) -> u32 {
        self.n_clusters
    }

    pub fn nodes_per_cluster(&self) -> u32 {
        self.nodes_per_cluster
    }

    pub fn n_nodes(&self) -> u64 {
        u64::from(self.n_clusters) * u64::from(self.nodes_per_cluster)
    }

    pub fn cluster_of(&self, node: u64) -> u32 {
        (node / u64::from(self.nodes_per_cluster)) as u32
    }

    pub fn nodes_of(&self, cluster: u32) -> std::ops::Range<u64> {
        let g = u64::from(self.nodes_per_cluster);
        u64::from(cluster) * g..(u64::from(cluster) + 1) * g
    }

    pub fn gateways_of(&self, cluster: u32) -> &BTreeSet<u64> {
        &self.gateways[cluster as usize]
    }

    /// Edge set as `(smaller, larger)` pairs.
    pub fn edge_set(&self) -> BTreeSet<(u64, u64)> {
        self.graph.edges().map(|(a, b)| (*a, *b)).collect()
    }

    pub fn is_cross_edge(&self, a: u64, b: u64) -> bool {
        self.cluster_of(a) != self.cluster_of(b)
    }

    pub fn inter_cluster_edges(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.graph
            .edges()
            .map(|(a, b)| (*a, *b))
            .filter(|&(a, b)| self.is_cross_edge(a, b))
    }

    /// Cluster-level quotient graph: one node per cluster, an edge wherever
    /// any inter-cluster link connects two clusters.
    pub fn quotient_graph(&self) -> UndirectedGraph<u32> {
        UndirectedGraph::build(
            0..self.n_clusters,
            self.inter_cluster_edges()
                .map(|(a, b)| (self.cluster_of(a), self.cluster_of(b))),
        )
    }

    /// Writes the sidecar CSV `node_id,cluster_id[,gateway]`.
    pub fn write_cluster_csv<W: std::io::Write>(&self, mut out: W) -> std::io::Result<()> {
        for node in 0..self.n_nodes() {
            let cluster = self.cluster_of(node);
            if self.gateways[cluster as usize].contains(&node) {
                writeln!(out, "{node},{cluster},gateway")?;
            } else {
                writeln!(out, "{node},{cluster}")?;
            }
        }
        Ok(())
    }
}

/// Builds the intra-cluster edge set: per cluster, a ring lattice joining
/// each node to its nearest neighbors, topped up with random chords until
/// the mean degree reaches `intra_degree`.
fn cluster_lattice_edges(spec: &OverlaySpec, rng: &mut ChaCha8Rng) -> BTreeSet<(u64, u64)> {
    let g = u64::from(spec.nodes_per_cluster);
    let degree = u64::from(spec.intra_degree);
    let mut edges = BTreeSet::new();
    for cluster in 0..u64::from(spec.n_clusters) {
        let base = cluster * g;
        if g == 1 {
            continue;
        }
        if g == 2 {
            edges.insert((base, base + 1));
            continue;
        }
        let lattice = (degree - degree % 2).min(g - 1).max(2);
        for v in 0..g {
            for offset in 1..=lattice / 2 {
                let a = base + v;
                let b = base + (v + offset) % g;
                edges.insert((a.min(b), a.max(b)));
            }
        }
        // Chords make up the odd or fractional remainder of the target.
        let lattice_edges = edges.iter().filter(|(a, _)| a / g == cluster).count() as u64;
        let want = (g * degree).div_ceil(2);
        let mut missing = want.saturating_sub(lattice_edges);
        let mut attempts = 0u64;
        while missing > 0 && attempts < 100 * want {
            attempts += 1;
            let a = base + rng.random_range(0..g);
            let b = base + rng.random_range(0..g);
            if a == b {
                continue;
            }
            if edges.insert((a.min(b), a.max(b))) {
                missing -= 1;
            }
        }
    }
    edges
}

/// Adds minimum random cross edges until the quotient graph is connected:
/// each disconnected cluster component gets one edge to the component of
/// cluster 0, between uniformly chosen member nodes.
fn repair_quotient_connectivity(
    spec_nodes_per_cluster: u32,
    n_clusters: u32,
    edges: &mut BTreeSet<(u64, u64)>,
    rng: &mut ChaCha8Rng,
) {
    let g = u64::from(spec_nodes_per_cluster);
    loop {
        // Union-find over clusters.
        let mut parent: Vec<u32> = (0..n_clusters).collect();
        fn find(parent: &mut Vec<u32>, x: u32) -> u32 {
            let mut root = x;
            while parent[root as usize] != root {
                root = parent[root as usize];
            }
            let mut cur = x;
            while parent[cur as usize] != root {
                let next = parent[cur as usize];
                parent[cur as usize] = root;
                cur = next;
            }
            root
        }
        for &(a, b) in edges.iter() {
            let (ca, cb) = ((a / g) as u32, (b / g) as u32);
            if ca != cb {
                let (ra, rb) = (find(&mut parent, ca), find(&mut parent, cb));
                if ra != rb {
                    parent[rb as usize] = ra;
                }
            }
        }
        let root0 = find(&mut parent, 0);
        let stranded: Vec<u32> = (1..n_clusters)
            .filter(|&c| find(&mut parent, c) != root0)
            .collect();
        if stranded.is_empty() {
            return;
        }
        for c in stranded {
            let a = rng.random_range(0..g); // node in cluster 0's component side
            let b = u64::from(c) * g + rng.random_range(0..g);
            edges.insert((a.min(b), a.max(b)));
        }
    }
}

/// Builds only the intra-cluster lattices of `spec`: no inter-cluster edges
/// yet. This is the input the wiring operations expect.
pub fn build_clusters(spec: &OverlaySpec) -> Result<Overlay, TopologyError> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let edges = cluster_lattice_edges(spec, &mut rng);
    Ok(Overlay::assemble(
        spec.n_clusters,
        spec.nodes_per_cluster,
        &edges,
        Vec::new(),
    ))
}

/// Builds a clustered overlay per `spec`: connected intra-cluster lattices,
/// inter-cluster edges per the wiring mode, and a connected quotient graph.
pub fn build_overlay(spec: &OverlaySpec) -> Result<Overlay, TopologyError> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut edges = cluster_lattice_edges(spec, &mut rng);
    let base = Overlay::assemble(spec.n_clusters, spec.nodes_per_cluster, &edges, Vec::new());
    let wired = match spec.wiring {
        Wiring::Random => wire_random(&base, spec.wiring_param, rng.random())?,
        Wiring::Gateway => {
            let links = (spec.wiring_param.round() as u32).max(1);
            wire_gateways(&base, 1, links, rng.random())?
        }
        Wiring::Rewire => rewire_watts(&base, spec.wiring_param, rng.random())?,
    };
    edges = wired.edge_set();
    repair_quotient_connectivity(spec.nodes_per_cluster, spec.n_clusters, &mut edges, &mut rng);
    let overlay = Overlay::assemble(
        spec.n_clusters,
        spec.nodes_per_cluster,
        &edges,
        wired.gateways.clone(),
    );
    debug_assert!(
        overlay.n_clusters == 1
            || overlay.quotient_graph().largest_connected_component().n_nodes()
                == u64::from(overlay.n_clusters)
    );
    Ok(overlay)
}

/// Adds a Poisson(`edges_per_cluster`) number of inter-cluster edges per
/// cluster, each between a uniform node of that cluster and a uniform node
/// of a uniform other cluster. Endpoints become gateways.
pub fn wire_random(
    overlay: &Overlay,
    edges_per_cluster: f64,
    seed: u64,
) -> Result<Overlay, TopologyError> {
    if !(edges_per_cluster >= 0.0) {
        return Err(TopologyError::Parameter(format!(
            "edges_per_cluster must be >= 0, got {edges_per_cluster}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = overlay.edge_set();
    let c = overlay.n_clusters();
    if c > 1 && edges_per_cluster > 0.0 {
        let poisson = rand_distr::Poisson::new(edges_per_cluster)
            .map_err(|e| TopologyError::Parameter(e.to_string()))?;
        for cluster in 0..c {
            let count = rng.sample(poisson) as u64;
            for _ in 0..count {
                let other = {
                    let pick = rng.random_range(0..c - 1);
                    if pick >= cluster {
                        pick + 1
                    } else {
                        pick
                    }
                };
                let a = overlay.nodes_of(cluster).start + rng.random_range(0..u64::from(overlay.nodes_per_cluster));
                let b = overlay.nodes_of(other).start + rng.random_range(0..u64::from(overlay.nodes_per_cluster));
                edges.insert((a.min(b), a.max(b)));
            }
        }
    }
    Ok(Overlay::assemble(
        c,
        overlay.nodes_per_cluster(),
        &edges,
        overlay.gateways.clone(),
    ))
}

/// Designates the `gateways_per_cluster` lowest node ids of each cluster as
/// gateways and links every gateway to `links_per_gateway` gateways of other
/// clusters, chosen uniformly without replacement.
pub fn wire_gateways(
    overlay: &Overlay,
    gateways_per_cluster: u32,
    links_per_gateway: u32,
    seed: u64,
) -> Result<Overlay, TopologyError> {
    if gateways_per_cluster == 0 {
        return Err(TopologyError::Parameter(
            "gateways_per_cluster must be >= 1".into(),
        ));
    }
    if gateways_per_cluster > overlay.nodes_per_cluster() {
        return Err(TopologyError::Parameter(format!(
            "gateways_per_cluster {} exceeds cluster size {}",
            gateways_per_cluster,
            overlay.nodes_per_cluster()
        )));
    }
    let c = overlay.n_clusters();
    let foreign_pool = (u64::from(c) - 1) * u64::from(gateways_per_cluster);
    if c > 1 && u64::from(links_per_gateway) > foreign_pool {
        return Err(TopologyError::Parameter(format!(
            "links_per_gateway {links_per_gateway} exceeds the {foreign_pool} gateways of other clusters"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = overlay.edge_set();
    let designated: Vec<BTreeSet<u64>> = (0..c)
        .map(|cluster| {
            overlay
                .nodes_of(cluster)
                .take(gateways_per_cluster as usize)
                .collect()
        })
        .collect();
    if c > 1 {
        for (cluster, own) in designated.iter().enumerate() {
            let foreign: Vec<u64> = designated
                .iter()
                .enumerate()
                .filter(|&(other, _)| other != cluster)
                .flat_map(|(_, set)| set.iter().copied())
                .collect();
            for &gateway in own {
                for &target in foreign.choose_multiple(&mut rng, links_per_gateway as usize) {
                    edges.insert((gateway.min(target), gateway.max(target)));
                }
            }
        }
    }
    Ok(Overlay::assemble(
        c,
        overlay.nodes_per_cluster(),
        &edges,
        designated,
    ))
}

/// Rewires each intra-cluster edge independently with probability `beta`:
/// the smaller endpoint is kept and the other is replaced by a uniform node
/// of a different cluster. A rewire that would duplicate an existing edge is
/// skipped and the original edge kept.
pub fn rewire_watts(overlay: &Overlay, beta: f64, seed: u64) -> Result<Overlay, TopologyError> {
    if !(0.0..=1.0).contains(&beta) {
        return Err(TopologyError::Parameter(format!(
            "beta must be in [0, 1], got {beta}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = overlay.edge_set();
    if overlay.n_clusters() > 1 && beta > 0.0 {
        let g = u64::from(overlay.nodes_per_cluster());
        let total = overlay.n_nodes();
        let intra: Vec<(u64, u64)> = edges
            .iter()
            .copied()
            .filter(|&(a, b)| !overlay.is_cross_edge(a, b))
            .collect();
        for (a, b) in intra {
            if rng.random::<f64>() >= beta {
                continue;
            }
            // Uniform node outside a's cluster: skip its contiguous block.
            let own_base = overlay.nodes_of(overlay.cluster_of(a)).start;
            let pick = rng.random_range(0..total - g);
            let target = if pick >= own_base { pick + g } else { pick };
            let candidate = (a.min(target), a.max(target));
            if edges.contains(&candidate) {
                continue;
            }
            edges.remove(&(a, b));
            edges.insert(candidate);
        }
    }
    Ok(Overlay::assemble(
        overlay.n_clusters(),
        overlay.nodes_per_cluster(),
        &edges,
        overlay.gateways.clone(),
    ))
}

//! Undirected graphs and the small-world metric suite.
//!
//! A small world pairs an average shortest-path length close to that of a
//! random graph of the same size with a clustering coefficient far above it.
//! [`UndirectedGraph::small_world_report`] runs that comparison: metrics of
//! the largest connected component against the mean over matched G(n, m)
//! samples.
//!
//! Graphs are simple (no self-loops, no parallel edges) and immutable after
//! construction; all metric operations are read-only.

use std::collections::VecDeque;
use std::io::{self, BufRead, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("undefined metric: {0}")]
    UndefinedMetric(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("edge-list line {line}: {message}")]
    EdgeList { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Simple undirected graph over ordered, opaque node identifiers.
///
/// Stored as a sorted id table plus index-based adjacency lists, so metric
/// sweeps run on dense indices regardless of the id type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedGraph<Id> {
    ids: Vec<Id>,
    adj: Vec<Vec<u32>>,
    n_links: u64,
}

impl<Id: Ord + Clone> UndirectedGraph<Id> {
    /// Builds a graph from node and edge lists.
    ///
    /// Endpoints are added as nodes automatically; self-loops and duplicate
    /// edges are dropped to preserve simplicity.
    pub fn build<N, E>(nodes: N, edges: E) -> Self
    where
        N: IntoIterator<Item = Id>,
        E: IntoIterator<Item = (Id, Id)>,
    {
        let edges: Vec<(Id, Id)> = edges.into_iter().collect();
        let mut ids: Vec<Id> = nodes.into_iter().collect();
        for (a, b) in &edges {
            ids.push(a.clone());
            ids.push(b.clone());
        }
        ids.sort();
        ids.dedup();

        let index = |id: &Id| ids.binary_search(id).expect("endpoint is in id table") as u32;
        let mut adj: Vec<Vec<u32>> = vec![Vec::new(); ids.len()];
        let mut n_links = 0u64;
        for (a, b) in &edges {
            let (ia, ib) = (index(a), index(b));
            if ia == ib || adj[ia as usize].contains(&ib) {
                continue;
            }
            adj[ia as usize].push(ib);
            adj[ib as usize].push(ia);
            n_links += 1;
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        UndirectedGraph { ids, adj, n_links }
    }

    pub fn n_nodes(&self) -> u64 {
        self.ids.len() as u64
    }

    pub fn n_links(&self) -> u64 {
        self.n_links
    }

    /// Node identifiers in sorted order.
    pub fn ids(&self) -> &[Id] {
        &self.ids
    }

    pub fn contains_node(&self, id: &Id) -> bool {
        self.ids.binary_search(id).is_ok()
    }

    pub fn has_edge(&self, a: &Id, b: &Id) -> bool {
        match (self.ids.binary_search(a), self.ids.binary_search(b)) {
            (Ok(ia), Ok(ib)) => self.adj[ia].binary_search(&(ib as u32)).is_ok(),
            _ => false,
        }
    }

    pub fn degree(&self, id: &Id) -> Option<usize> {
        self.ids.binary_search(id).ok().map(|i| self.adj[i].len())
    }

    pub fn neighbors(&self, id: &Id) -> Option<impl Iterator<Item = &Id>> {
        self.ids
            .binary_search(id)
            .ok()
            .map(|i| self.adj[i].iter().map(|&j| &self.ids[j as usize]))
    }

    /// Edges as `(smaller id, larger id)` pairs in sorted order.
    pub fn edges(&self) -> impl Iterator<Item = (&Id, &Id)> {
        self.adj.iter().enumerate().flat_map(move |(i, list)| {
            list.iter()
                .filter(move |&&j| (i as u32) < j)
                .map(move |&j| (&self.ids[i], &self.ids[j as usize]))
        })
    }

    /// Mean, over nodes of degree >= 2, of the fraction of neighbor pairs
    /// that are themselves connected. 0 when no node qualifies.
    ///
    /// Nodes of degree < 2 have no neighbor pair to rate and are excluded
    /// from the average rather than counted as zero.
    pub fn clustering_coefficient(&self) -> f64 {
        let mut sum = 0.0;
        let mut counted = 0u64;
        for list in &self.adj {
            let deg = list.len();
            if deg < 2 {
                continue;
            }
            // Edges among neighbors, via sorted-list intersections.
            let mut among = 0u64;
            for &u in list {
                among += sorted_intersection_count(list, &self.adj[u as usize]);
            }
            let pairs = (deg * (deg - 1) / 2) as f64;
            sum += (among / 2) as f64 / pairs;
            counted += 1;
        }
        if counted == 0 {
            0.0
        } else {
            sum / counted as f64
        }
    }

    /// Mean shortest-path length over all unordered node pairs of the
    /// largest connected component, computed exactly by BFS from every
    /// component node.
    pub fn average_path_length(&self) -> Result<f64, GraphError> {
        let lcc = self.largest_component_indices();
        if lcc.len() < 2 {
            return Err(GraphError::UndefinedMetric(
                "average path length needs >= 2 nodes in the largest connected component".into(),
            ));
        }
        let mut member = vec![false; self.ids.len()];
        for &i in &lcc {
            member[i as usize] = true;
        }
        let mut total = 0u64;
        let mut dist = vec![u32::MAX; self.ids.len()];
        let mut queue = VecDeque::new();
        for &src in &lcc {
            dist.fill(u32::MAX);
            dist[src as usize] = 0;
            queue.clear();
            queue.push_back(src);
            while let Some(v) = queue.pop_front() {
                let d = dist[v as usize];
                for &w in &self.adj[v as usize] {
                    if member[w as usize] && dist[w as usize] == u32::MAX {
                        dist[w as usize] = d + 1;
                        queue.push_back(w);
                    }
                }
            }
            total += lcc
                .iter()
                .map(|&i| u64::from(dist[i as usize]))
                .sum::<u64>();
        }
        // Ordered pairs counted twice; the ratio equals the unordered mean.
        let n = lcc.len() as u64;
        Ok(total as f64 / (n * (n - 1)) as f64)
    }

    /// Induced subgraph on the component with the most nodes; ties break
    /// toward the component containing the smallest node id. An empty graph
    /// maps to an empty graph.
    pub fn largest_connected_component(&self) -> Self {
        let keep = self.largest_component_indices();
        let mut member = vec![false; self.ids.len()];
        for &i in &keep {
            member[i as usize] = true;
        }
        let nodes = keep.iter().map(|&i| self.ids[i as usize].clone());
        let edges = self.adj.iter().enumerate().flat_map(|(i, list)| {
            let member = &member;
            list.iter()
                .filter(move |&&j| member[i] && member[j as usize] && (i as u32) < j)
                .map(move |&j| (self.ids[i].clone(), self.ids[j as usize].clone()))
        });
        let edges: Vec<_> = edges.collect();
        UndirectedGraph::build(nodes, edges)
    }

    /// Whole-graph counts plus clustering and path length of the LCC.
    pub fn metrics(&self) -> Result<GraphMetrics, GraphError> {
        let lcc = self.largest_connected_component();
        Ok(GraphMetrics {
            n_nodes: self.n_nodes(),
            n_links: self.n_links(),
            lcc_nodes: lcc.n_nodes(),
            lcc_links: lcc.n_links(),
            clustering: lcc.clustering_coefficient(),
            avg_path_length: lcc.average_path_length()?,
        })
    }

    /// Compares this graph's LCC against `samples` random G(n, m) graphs
    /// matched to the LCC's node and link counts.
    pub fn small_world_report(
        &self,
        samples: u32,
        seed: u64,
    ) -> Result<SmallWorldReport, GraphError> {
        if samples == 0 {
            return Err(GraphError::Parameter("baseline samples must be >= 1".into()));
        }
        let observed = self.metrics()?;
        let mut clustering_sum = 0.0;
        let mut path_sum = 0.0;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let g = random_graph_gnm(observed.lcc_nodes, observed.lcc_links, rng.random())?;
            clustering_sum += g.clustering_coefficient();
            path_sum += g.average_path_length()?;
        }
        let baseline_clustering = clustering_sum / f64::from(samples);
        let baseline_path_length = path_sum / f64::from(samples);
        Ok(SmallWorldReport {
            clustering_ratio: observed.clustering / baseline_clustering,
            path_ratio: observed.avg_path_length / baseline_path_length,
            observed,
            baseline_clustering,
            baseline_path_length,
            baseline_samples: samples,
        })
    }

    fn largest_component_indices(&self) -> Vec<u32> {
        let mut seen = vec![false; self.ids.len()];
        let mut best: Vec<u32> = Vec::new();
        // ids are sorted, so scanning in index order makes the tie-break
        // (smallest minimum node id) automatic.
        for start in 0..self.ids.len() {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start as u32];
            seen[start] = true;
            let mut head = 0;
            while head < comp.len() {
                let v = comp[head] as usize;
                head += 1;
                for &w in &self.adj[v] {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        comp.push(w);
                    }
                }
            }
            if comp.len() > best.len() {
                best = comp;
            }
        }
        best.sort_unstable();
        best
    }
}

fn sorted_intersection_count(a: &[u32], b: &[u32]) -> u64 {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// Node/link counts of a graph together with clustering coefficient and
/// average path length of its largest connected component.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GraphMetrics {
    pub n_nodes: u64,
    pub n_links: u64,
    pub lcc_nodes: u64,
    pub lcc_links: u64,
    pub clustering: f64,
    pub avg_path_length: f64,
}

/// Observed metrics next to the mean clustering and path length of matched
/// G(n, m) baselines, plus the two small-world ratios.
///
/// Serializes flat: `n_nodes, n_links, lcc_nodes, lcc_links, clustering,
/// avg_path_length, baseline_clustering, baseline_path_length,
/// clustering_ratio, path_ratio`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SmallWorldReport {
    #[serde(flatten)]
    pub observed: GraphMetrics,
    pub baseline_clustering: f64,
    pub baseline_path_length: f64,
    pub clustering_ratio: f64,
    pub path_ratio: f64,
    #[serde(skip)]
    pub baseline_samples: u32,
}

/// Uniform random simple graph with exactly `n` nodes (ids `0..n`) and `m`
/// distinct edges; deterministic for a given seed.
pub fn random_graph_gnm(n: u64, m: u64, seed: u64) -> Result<UndirectedGraph<u64>, GraphError> {
    let max = n.saturating_mul(n.saturating_sub(1)) / 2;
    if m > max {
        return Err(GraphError::Parameter(format!(
            "m = {m} exceeds the {max} possible edges on {n} nodes"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(u64, u64)> = Vec::with_capacity(m as usize);
    if max <= 2_000_000 {
        // Dense or small: enumerate all pairs and take a partial shuffle.
        let mut pairs: Vec<(u64, u64)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .collect();
        for i in 0..m as usize {
            let j = rng.random_range(i..pairs.len());
            pairs.swap(i, j);
            edges.push(pairs[i]);
        }
    } else {
        // Sparse: rejection-sample distinct pairs.
        let mut taken = std::collections::HashSet::with_capacity(m as usize);
        while edges.len() < m as usize {
            let a = rng.random_range(0..n);
            let b = rng.random_range(0..n);
            if a == b {
                continue;
            }
            let key = (a.min(b), a.max(b));
            if taken.insert(key) {
                edges.push(key);
            }
        }
    }
    Ok(UndirectedGraph::build(0..n, edges))
}

/// Ring lattice on `n` nodes where each node joins its `k` nearest ring
/// neighbors (`k` even). Clustering follows the closed form
/// `3(k-2) / (4(k-1))` once `n` is large enough for offsets not to wrap.
pub fn ring_lattice(n: u64, k: u32) -> Result<UndirectedGraph<u64>, GraphError> {
    if k % 2 != 0 {
        return Err(GraphError::Parameter(format!(
            "ring lattice degree must be even, got {k}"
        )));
    }
    if u64::from(k) >= n {
        return Err(GraphError::Parameter(format!(
            "ring lattice degree {k} must be below node count {n}"
        )));
    }
    let mut edges = Vec::new();
    for v in 0..n {
        for offset in 1..=u64::from(k / 2) {
            edges.push((v, (v + offset) % n));
        }
    }
    Ok(UndirectedGraph::build(0..n, edges))
}

/// Writes one `u v` pair per line. Node ids must not contain whitespace.
pub fn write_edge_list<Id: Ord + Clone + std::fmt::Display, W: Write>(
    graph: &UndirectedGraph<Id>,
    mut out: W,
) -> io::Result<()> {
    for (a, b) in graph.edges() {
        writeln!(out, "{a} {b}")?;
    }
    Ok(())
}

/// Reads the edge-list format: one `u v` pair per line, `#` comments and
/// blank lines skipped.
pub fn read_edge_list<R: BufRead>(reader: R) -> Result<UndirectedGraph<String>, GraphError> {
    let mut edges = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        match (parts.next(), parts.next(), parts.next()) {
            (Some(a), Some(b), None) => edges.push((a.to_string(), b.to_string())),
            _ => {
                return Err(GraphError::EdgeList {
                    line: lineno + 1,
                    message: "expected exactly two whitespace-separated node ids".into(),
                })
            }
        }
    }
    Ok(UndirectedGraph::build(Vec::new(), edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn complete(n: u64) -> UndirectedGraph<u64> {
        UndirectedGraph::build(
            0..n,
            (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))),
        )
    }

    #[test]
    fn complete_graph_metrics() {
        let k4 = complete(4);
        assert_eq!(k4.n_nodes(), 4);
        assert_eq!(k4.n_links(), 6);
        assert_eq!(k4.clustering_coefficient(), 1.0);
        assert_eq!(k4.average_path_length().unwrap(), 1.0);
    }

    #[test]
    fn star_has_zero_clustering() {
        let star = UndirectedGraph::build(Vec::new(), (1..=5u64).map(|leaf| (0, leaf)));
        assert_eq!(star.clustering_coefficient(), 0.0);
    }

    #[test]
    fn ring_lattice_closed_form() {
        let g = ring_lattice(20, 4).unwrap();
        assert!((g.clustering_coefficient() - 0.5).abs() < 1e-12);
        for (n, k) in [(50u64, 4u32), (100, 6), (60, 8)] {
            let g = ring_lattice(n, k).unwrap();
            let expected = 3.0 * f64::from(k - 2) / (4.0 * f64::from(k - 1));
            assert!(
                (g.clustering_coefficient() - expected).abs() < 1e-12,
                "n={n} k={k}"
            );
        }
    }

    #[test]
    fn path_graph_average_distance() {
        let path = UndirectedGraph::build(Vec::new(), [("a", "b"), ("b", "c")]);
        assert!((path.average_path_length().unwrap() - 4.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn single_node_path_undefined() {
        let g: UndirectedGraph<u64> = UndirectedGraph::build([7], Vec::new());
        assert!(matches!(
            g.average_path_length(),
            Err(GraphError::UndefinedMetric(_))
        ));
    }

    #[test]
    fn self_loops_and_duplicates_dropped() {
        let g = UndirectedGraph::build(Vec::new(), [(1u64, 2), (2, 1), (1, 1), (1, 2)]);
        assert_eq!(g.n_nodes(), 2);
        assert_eq!(g.n_links(), 1);
    }

    #[test]
    fn largest_component_selection() {
        let connected = complete(5);
        assert_eq!(connected.largest_connected_component(), connected);

        // Components of sizes 3 and 2.
        let g = UndirectedGraph::build(Vec::new(), [(0u64, 1), (1, 2), (10, 11)]);
        let lcc = g.largest_connected_component();
        assert_eq!(lcc.ids(), &[0, 1, 2]);

        // K3 plus an isolated node.
        let g = UndirectedGraph::build([99u64], [(0, 1), (1, 2), (0, 2)]);
        let lcc = g.largest_connected_component();
        assert_eq!(lcc.n_nodes(), 3);
        assert_eq!(lcc.n_links(), 3);

        // Equal sizes: component holding the smallest id wins.
        let g = UndirectedGraph::build(Vec::new(), [("d", "e"), ("b", "c")]);
        let lcc = g.largest_connected_component();
        assert_eq!(lcc.ids(), &["b".to_string(), "c".to_string()]);
    }

    #[test]
    fn empty_graph_lcc_is_empty() {
        let g: UndirectedGraph<u64> = UndirectedGraph::build(Vec::new(), Vec::new());
        assert_eq!(g.largest_connected_component().n_nodes(), 0);
    }

    #[test]
    fn gnm_forced_and_empty_cases() {
        let g = random_graph_gnm(4, 6, 1).unwrap();
        assert_eq!(g.n_links(), 6);
        assert_eq!(g.clustering_coefficient(), 1.0);

        let g = random_graph_gnm(10, 0, 1).unwrap();
        assert_eq!(g.n_nodes(), 10);
        assert_eq!(g.n_links(), 0);

        assert!(random_graph_gnm(4, 7, 1).is_err());
    }

    #[test]
    fn gnm_deterministic_per_seed() {
        let a = random_graph_gnm(30, 60, 9).unwrap();
        let b = random_graph_gnm(30, 60, 9).unwrap();
        assert_eq!(a, b);
        let c = random_graph_gnm(30, 60, 10).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn gnm_edge_frequencies_uniform() {
        let (n, m, trials) = (6u64, 5u64, 2000u64);
        let mut counts = std::collections::HashMap::new();
        for seed in 0..trials {
            let g = random_graph_gnm(n, m, seed).unwrap();
            for (a, b) in g.edges() {
                *counts.entry((*a, *b)).or_insert(0u64) += 1;
            }
        }
        let p = m as f64 / (n * (n - 1) / 2) as f64;
        let se = (p * (1.0 - p) / trials as f64).sqrt();
        for a in 0..n {
            for b in a + 1..n {
                let freq = *counts.get(&(a, b)).unwrap_or(&0) as f64 / trials as f64;
                assert!(
                    (freq - p).abs() <= 3.0 * se,
                    "pair ({a},{b}): freq {freq}, expected {p} +/- {}",
                    3.0 * se
                );
            }
        }
    }

    #[test]
    fn gnm_mean_clustering_tracks_density() {
        // Table-1 scale: n=126, m=1045 over 32 seeds.
        let (n, m) = (126u64, 1045u64);
        let mean: f64 = (0..32)
            .map(|seed| {
                random_graph_gnm(n, m, seed)
                    .unwrap()
                    .clustering_coefficient()
            })
            .sum::<f64>()
            / 32.0;
        let density = 2.0 * m as f64 / (n * (n - 1)) as f64;
        assert!(
            (mean - density).abs() / density < 0.30,
            "mean {mean} vs density {density}"
        );
    }

    #[test]
    fn small_world_report_on_k4() {
        let report = complete(4).small_world_report(8, 3).unwrap();
        assert!(report.clustering_ratio >= 1.0);
        assert_eq!(report.observed.clustering, 1.0);
        assert_eq!(report.baseline_samples, 8);
    }

    #[test]
    fn ring_lattice_is_a_small_world_candidate() {
        let g = ring_lattice(100, 6).unwrap();
        let report = g.small_world_report(8, 11).unwrap();
        assert!((report.observed.clustering - 0.6).abs() < 1e-12);
        assert!(
            report.clustering_ratio > 5.0,
            "ratio {}",
            report.clustering_ratio
        );
    }

    #[test]
    fn report_serializes_flat() {
        let report = complete(4).small_world_report(2, 1).unwrap();
        let json: serde_json::Value = serde_json::to_value(report).unwrap();
        for key in [
            "n_nodes",
            "n_links",
            "lcc_nodes",
            "lcc_links",
            "clustering",
            "avg_path_length",
            "baseline_clustering",
            "baseline_path_length",
            "clustering_ratio",
            "path_ratio",
        ] {
            assert!(json.get(key).is_some(), "missing {key}");
        }
        assert!(json.get("baseline_samples").is_none());
        assert!(json.get("observed").is_none());
    }

    #[test]
    fn edge_list_round_trip() {
        let g = UndirectedGraph::build(
            Vec::new(),
            [("n1", "n2"), ("n2", "n3"), ("n1", "n3")],
        );
        let mut buf = Vec::new();
        write_edge_list(&g, &mut buf).unwrap();
        let back = read_edge_list(buf.as_slice()).unwrap();
        assert_eq!(back.n_nodes(), 3);
        assert_eq!(back.n_links(), 3);
        assert!(back.has_edge(&"n1".to_string(), &"n3".to_string()));
    }

    #[test]
    fn edge_list_rejects_malformed_lines() {
        let err = read_edge_list("a b\nc\n".as_bytes()).unwrap_err();
        match err {
            GraphError::EdgeList { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error {other:?}"),
        }
        // Comments and blanks are fine.
        let g = read_edge_list("# header\n\na b\n".as_bytes()).unwrap();
        assert_eq!(g.n_links(), 1);
    }

    /// Brute-force Floyd-Warshall oracle for path lengths.
    fn apl_oracle<Id: Ord + Clone>(g: &UndirectedGraph<Id>) -> Option<f64> {
        let lcc = g.largest_connected_component();
        let n = lcc.n_nodes() as usize;
        if n < 2 {
            return None;
        }
        let ids = lcc.ids().to_vec();
        let mut dist = vec![vec![u64::MAX / 4; n]; n];
        for (i, row) in dist.iter_mut().enumerate() {
            row[i] = 0;
        }
        for (a, b) in lcc.edges() {
            let ia = ids.binary_search(a).unwrap();
            let ib = ids.binary_search(b).unwrap();
            dist[ia][ib] = 1;
            dist[ib][ia] = 1;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let via = dist[i][k] + dist[k][j];
                    if via < dist[i][j] {
                        dist[i][j] = via;
                    }
                }
            }
        }
        let mut total = 0u64;
        for i in 0..n {
            for j in i + 1..n {
                total += dist[i][j];
            }
        }
        Some(total as f64 / (n * (n - 1) / 2) as f64)
    }

    #[test]
    fn bfs_matches_floyd_warshall_oracle() {
        for seed in 0..10u64 {
            let n = 5 + (seed % 20);
            let max = n * (n - 1) / 2;
            let m = (seed * 13 + n) % (max + 1);
            let g = random_graph_gnm(n, m, seed).unwrap();
            let oracle = apl_oracle(&g);
            match oracle {
                Some(expected) => {
                    let got = g.average_path_length().unwrap();
                    assert!((got - expected).abs() < 1e-12, "seed {seed}");
                }
                None => assert!(g.average_path_length().is_err(), "seed {seed}"),
            }
        }
    }

    proptest! {
        #[test]
        fn clustering_in_unit_interval(seed in 0u64..500, n in 2u64..24, density in 0.0f64..1.0) {
            let max = n * (n - 1) / 2;
            let m = ((max as f64) * density) as u64;
            let g = random_graph_gnm(n, m, seed).unwrap();
            let c = g.clustering_coefficient();
            prop_assert!((0.0..=1.0).contains(&c));
        }

        #[test]
        fn path_length_invariant_under_relabeling(seed in 0u64..200, n in 3u64..16) {
            let max = n * (n - 1) / 2;
            let m = (seed % max).max(1);
            let g = random_graph_gnm(n, m, seed).unwrap();
            // Relabel id v -> (v * 7919 + 13) so ordering shuffles.
            let relabeled = UndirectedGraph::build(
                g.ids().iter().map(|v| (v * 7919 + 13) % 1_000_003),
                g.edges().map(|(a, b)| ((a * 7919 + 13) % 1_000_003, (b * 7919 + 13) % 1_000_003)),
            );
            match (g.average_path_length(), relabeled.average_path_length()) {
                (Ok(a), Ok(b)) => prop_assert!((a - b).abs() < 1e-12),
                (Err(_), Err(_)) => {}
                other => prop_assert!(false, "mismatch {other:?}"),
            }
        }

        #[test]
        fn complete_graphs_have_unit_metrics(n in 3u64..12) {
            let g = complete(n);
            prop_assert_eq!(g.clustering_coefficient(), 1.0);
            prop_assert_eq!(g.average_path_length().unwrap(), 1.0);
        }
    }
}

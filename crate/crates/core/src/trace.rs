//! File-access trace ingestion and windowed file-sharing graphs.
//!
//! A trace is a headerless CSV of `user_id,file_id,timestamp` records. For a
//! time window, the sharing graph has one node per user active in the window
//! and an edge between two users iff they accessed at least one common file
//! inside it. Windows anchor at the trace's minimum timestamp, so reports
//! are trace-relative and deterministic.

use std::collections::{BTreeMap, BTreeSet};
use std::io::{self, BufRead};

use serde::Serialize;
use thiserror::Error;

use crate::graph::{GraphError, SmallWorldReport, UndirectedGraph};

#[derive(Debug, Error)]
pub enum TraceError {
    #[error("trace contains no events")]
    Empty,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// One access record: `user_id` touched `file_id` at `timestamp` (UNIX
/// seconds).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEvent {
    pub user_id: String,
    pub file_id: String,
    pub timestamp: u64,
}

/// Half-open time window `[start, start + length)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WindowSpec {
    pub start: u64,
    /// Window length in seconds; must be positive.
    pub length: u64,
}

impl WindowSpec {
    pub fn contains(&self, timestamp: u64) -> bool {
        timestamp >= self.start && timestamp - self.start < self.length
    }
}

/// A line that failed to parse, with its 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineError {
    pub line: usize,
    pub message: String,
}

/// Parse output: events in input order plus per-line errors for malformed
/// records. Malformed lines never abort the parse.
#[derive(Debug, Default)]
pub struct ParsedTrace {
    pub events: Vec<TraceEvent>,
    pub errors: Vec<LineError>,
}

/// Parses the CSV trace format: `user_id,file_id,timestamp` per line, UTF-8,
/// `#`-prefixed comment lines and blank lines skipped.
pub fn parse_trace<R: BufRead>(reader: R) -> io::Result<ParsedTrace> {
    let mut out = ParsedTrace::default();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.strip_suffix('\r').unwrap_or(&line);
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut report = |message: String| {
            out.errors.push(LineError {
                line: lineno + 1,
                message,
            });
        };
        let mut parts = line.split(',');
        let (user, file, ts) = match (parts.next(), parts.next(), parts.next(), parts.next()) {
            (Some(u), Some(f), Some(t), None) => (u, f, t),
            _ => {
                report("expected exactly 3 comma-separated fields".into());
                continue;
            }
        };
        if user.is_empty() || file.is_empty() {
            report("user_id and file_id must be non-empty".into());
            continue;
        }
        match ts.trim().parse::<u64>() {
            Ok(timestamp) => out.events.push(TraceEvent {
                user_id: user.to_string(),
                file_id: file.to_string(),
                timestamp,
            }),
            Err(e) => report(format!("bad timestamp {ts:?}: {e}")),
        }
    }
    Ok(out)
}

/// Builds the file-sharing graph for one window: nodes are users with at
/// least one in-window event; an edge joins two distinct users iff some file
/// was accessed by both inside the window.
pub fn build_sharing_graph(events: &[TraceEvent], window: &WindowSpec) -> UndirectedGraph<String> {
    let mut users: BTreeSet<&str> = BTreeSet::new();
    let mut by_file: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
    for event in events {
        if !window.contains(event.timestamp) {
            continue;
        }
        users.insert(&event.user_id);
        by_file
            .entry(&event.file_id)
            .or_default()
            .insert(&event.user_id);
    }
    let mut edges: BTreeSet<(&str, &str)> = BTreeSet::new();
    for sharers in by_file.values() {
        let sharers: Vec<&str> = sharers.iter().copied().collect();
        for (i, a) in sharers.iter().enumerate() {
            for b in &sharers[i + 1..] {
                edges.insert((a, b));
            }
        }
    }
    UndirectedGraph::build(
        users.iter().map(|u| u.to_string()),
        edges.iter().map(|(a, b)| (a.to_string(), b.to_string())),
    )
}

/// Per-window analysis result. `report` is `None` when the window's graph is
/// too degenerate for path metrics (largest component below two nodes).
#[derive(Debug, Clone, Serialize)]
pub struct WindowReport {
    pub window: WindowSpec,
    pub n_nodes: u64,
    pub n_links: u64,
    pub report: Option<SmallWorldReport>,
}

/// Builds the graph over `[min_timestamp, min_timestamp + length)` for each
/// requested length and runs the small-world comparison on it. Output is
/// ordered by window length.
pub fn windowed_reports(
    events: &[TraceEvent],
    window_lengths: &[u64],
    samples: u32,
    seed: u64,
) -> Result<Vec<WindowReport>, TraceError> {
    let start = events
        .iter()
        .map(|e| e.timestamp)
        .min()
        .ok_or(TraceError::Empty)?;
    let mut lengths: Vec<u64> = window_lengths.to_vec();
    lengths.sort_unstable();
    lengths.dedup();
    let mut out = Vec::with_capacity(lengths.len());
    for (i, &length) in lengths.iter().enumerate() {
        let window = WindowSpec { start, length };
        let graph = build_sharing_graph(events, &window);
        let report = if graph.largest_connected_component().n_nodes() >= 2 {
            // Independent baseline stream per window.
            Some(graph.small_world_report(samples, seed.wrapping_add(i as u64))?)
        } else {
            None
        };
        out.push(WindowReport {
            window,
            n_nodes: graph.n_nodes(),
            n_links: graph.n_links(),
            report,
        });
    }
    Ok(out)
}

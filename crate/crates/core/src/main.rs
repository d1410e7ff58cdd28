//! `filoc`: trace analysis, filter sizing, workload curves, overlay
//! construction, and simulation runs from one binary.
//!
//! Exit codes: 0 success, 1 runtime failure, 2 usage or config error.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use filoc::bloom;
use filoc::graph::write_edge_list;
use filoc::sim::{self, write_rounds_csv, Sim, SimConfig};
use filoc::topology::{build_overlay, OverlaySpec, Wiring};
use filoc::trace::{parse_trace, windowed_reports};
use filoc::workload::{figure2_curve, write_curve_csv};
use filoc::DEFAULT_SEED;

#[derive(Parser)]
#[command(
    name = "filoc",
    about = "Gossip-based file location toolkit: sharing-graph analysis, Bloom-filter sizing, Zipf workload curves, clustered overlays, and a deterministic simulator",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a file-access trace: windowed sharing graphs and their
    /// small-world metrics against random baselines.
    AnalyzeTrace(AnalyzeTraceArgs),
    /// Filter sizing and gossip traffic estimates for a cluster.
    Estimate(EstimateArgs),
    /// Fraction-of-requests-served-locally curve over a coverage grid.
    WorkloadCurve(WorkloadCurveArgs),
    /// Construct a clustered overlay and export it.
    BuildOverlay(BuildOverlayArgs),
    /// Run the gossip/location simulator from a config file.
    Simulate(SimulateArgs),
}

#[derive(Args)]
struct AnalyzeTraceArgs {
    /// Trace CSV: `user_id,file_id,timestamp` per line.
    #[arg(long)]
    trace: PathBuf,
    /// Comma-separated window lengths (suffix d/h/s, bare = seconds).
    #[arg(long, default_value = "1d,2d,7d,14d,30d")]
    windows: String,
    /// Random-baseline graphs per window.
    #[arg(long, default_value_t = 20)]
    samples: u32,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Write one report JSON per window (NDJSON) here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EstimateArgs {
    /// Files per cluster.
    #[arg(long)]
    files: u64,
    /// Nodes per cluster.
    #[arg(long)]
    nodes: u64,
    /// Target false-positive rate.
    #[arg(long, default_value_t = 0.001)]
    fp: f64,
    /// Average file lifetime in days.
    #[arg(long = "lifetime-days", default_value_t = 10.0)]
    lifetime_days: f64,
    /// Effective gossip fanout.
    #[arg(long, default_value_t = 1.2)]
    fanout: f64,
    /// Gossip period in seconds.
    #[arg(long = "period-secs", default_value_t = 1.0)]
    period_secs: f64,
}

#[derive(Args)]
struct WorkloadCurveArgs {
    /// Comma-separated Zipf exponents.
    #[arg(long)]
    alpha: String,
    /// Catalog size.
    #[arg(long)]
    files: u64,
    /// Comma-separated coverage fractions in [0, 1].
    #[arg(long = "coverage-grid")]
    coverage_grid: String,
    /// Output CSV path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BuildOverlayArgs {
    #[arg(long)]
    clusters: u32,
    /// Nodes per cluster.
    #[arg(long)]
    size: u32,
    /// Target intra-cluster degree.
    #[arg(long)]
    degree: u32,
    /// random, gateway, or rewire.
    #[arg(long)]
    wiring: String,
    /// Wiring parameter (meaning depends on the mode).
    #[arg(long)]
    param: f64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Edge-list output path; the node/cluster map lands next to it as
    /// `<out>.clusters.csv`.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SimulateArgs {
    /// Simulation config (TOML; see README for the key set).
    #[arg(long)]
    config: PathBuf,
    /// Metrics JSON output path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write per-round counters as CSV `round,served_local,fp,fn,bytes`.
    #[arg(long = "rounds-csv")]
    rounds_csv: Option<PathBuf>,
}

enum CliError {
    /// Bad input: unreadable paths, malformed flags or config. Exit 2.
    Usage(String),
    /// Failure after inputs were accepted. Exit 1.
    Runtime(String),
}

impl CliError {
    fn report(&self) -> ExitCode {
        match self {
            CliError::Usage(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(2)
            }
            CliError::Runtime(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(1)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::AnalyzeTrace(args) => cmd_analyze_trace(args),
        Command::Estimate(args) => cmd_estimate(args),
        Command::WorkloadCurve(args) => cmd_workload_curve(args),
        Command::BuildOverlay(args) => cmd_build_overlay(args),
        Command::Simulate(args) => cmd_simulate(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => err.report(),
    }
}

/// `3600`, `12h`, `2d` -> seconds.
fn parse_duration_secs(text: &str) -> Result<u64, CliError> {
    let text = text.trim();
    let bad = || CliError::Usage(format!("bad duration {text:?} (expected e.g. 7d, 12h, 900s)"));
    let (digits, multiplier) = match text.as_bytes().last() {
        Some(b'd') => (&text[..text.len() - 1], 86_400),
        Some(b'h') => (&text[..text.len() - 1], 3_600),
        Some(b's') => (&text[..text.len() - 1], 1),
        Some(c) if c.is_ascii_digit() => (text, 1),
        _ => return Err(bad()),
    };
    let value: u64 = digits.parse().map_err(|_| bad())?;
    if value == 0 {
        return Err(CliError::Usage(format!("duration {text:?} must be positive")));
    }
    Ok(value * multiplier)
}

fn parse_f64_list(text: &str, what: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("bad {what} entry {part:?}")))
        })
        .collect()
}

fn create_out(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", path.display())))
}

fn cmd_analyze_trace(args: AnalyzeTraceArgs) -> Result<(), CliError> {
    // Window labels keep their original spelling, ordered by length to
    // match the report order.
    let mut windows: Vec<(u64, String)> = Vec::new();
    for label in args.windows.split(',') {
        let secs = parse_duration_secs(label)?;
        if !windows.iter().any(|(s, _)| *s == secs) {
            windows.push((secs, label.trim().to_string()));
        }
    }
    windows.sort();
    if windows.is_empty() {
        return Err(CliError::Usage("no windows given".into()));
    }
    if args.samples == 0 {
        return Err(CliError::Usage("--samples must be >= 1".into()));
    }

    let file = File::open(&args.trace)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", args.trace.display())))?;
    let parsed = parse_trace(BufReader::new(file))
        .map_err(|e| CliError::Runtime(format!("reading {}: {e}", args.trace.display())))?;
    for issue in &parsed.errors {
        eprintln!(
            "warning: {} line {}: {}",
            args.trace.display(),
            issue.line,
            issue.message
        );
    }

    println!(
        "{:>10} {:>7} {:>7} {:>9} {:>9} {:>10} {:>8} {:>14} {:>13}",
        "interval",
        "nodes",
        "links",
        "lcc-nodes",
        "lcc-links",
        "clustering",
        "path-len",
        "rand-clust",
        "rand-path"
    );
    if parsed.events.is_empty() {
        eprintln!("warning: trace contains no events");
        return Ok(());
    }

    let lengths: Vec<u64> = windows.iter().map(|(secs, _)| *secs).collect();
    let reports = windowed_reports(&parsed.events, &lengths, args.samples, args.seed)
        .map_err(|e| CliError::Runtime(e.to_string()))?;
    for (report, (_, label)) in reports.iter().zip(&windows) {
        match &report.report {
            Some(sw) => println!(
                "{:>10} {:>7} {:>7} {:>9} {:>9} {:>10.3} {:>8.2} {:>14.3} {:>13.2}",
                label,
                report.n_nodes,
                report.n_links,
                sw.observed.lcc_nodes,
                sw.observed.lcc_links,
                sw.observed.clustering,
                sw.observed.avg_path_length,
                sw.baseline_clustering,
                sw.baseline_path_length,
            ),
            None => println!(
                "{:>10} {:>7} {:>7} {:>9} {:>9} {:>10} {:>8} {:>14} {:>13}",
                label, report.n_nodes, report.n_links, "-", "-", "(empty)", "-", "-", "-"
            ),
        }
    }

    let ndjson: Vec<String> = reports
        .iter()
        .map(|report| serde_json::to_string(report).expect("reports serialize"))
        .collect();
    match &args.out {
        Some(path) => {
            let mut out = create_out(path)?;
            for line in &ndjson {
                writeln!(out, "{line}")
                    .map_err(|e| CliError::Runtime(format!("writing {}: {e}", path.display())))?;
            }
        }
        None => {
            for line in &ndjson {
                println!("{line}");
            }
        }
    }
    Ok(())
}

fn cmd_estimate(args: EstimateArgs) -> Result<(), CliError> {
    if args.files == 0 || args.nodes == 0 {
        return Err(CliError::Usage("--files and --nodes must be positive".into()));
    }
    if args.fp <= 0.0 {
        return Err(CliError::Usage(format!(
            "--fp must be in (0, 1), got {}",
            args.fp
        )));
    }
    let params = if args.fp >= 1.0 {
        eprintln!(
            "warning: target fp {} accepts every lookup; emitting the minimal one-byte filter",
            args.fp
        );
        bloom::BloomParams::new(8, 1)
            .expect("static params")
            .with_expected_items(args.files)
    } else {
        bloom::size_for(args.files, args.fp).map_err(|e| CliError::Usage(e.to_string()))?
    };
    let bits_per_entry = params.bits as f64 / args.files as f64;
    let storage_mb = params.bits as f64 / 8.0 / 1e6;
    // Whole bytes per advertised entry, the granularity gossip payloads pay.
    let bytes_per_entry = (bits_per_entry / 8.0).ceil().max(1.0);
    let traffic = sim::estimate_traffic(
        args.files,
        args.nodes,
        args.lifetime_days * 86_400.0,
        bytes_per_entry,
        args.fanout,
        args.period_secs,
    )
    .map_err(|e| CliError::Usage(e.to_string()))?;

    println!("filter sizing");
    println!("  files: {}", args.files);
    println!("  target_fp: {}", args.fp);
    println!("  bits_total: {}", params.bits);
    println!("  hashes: {}", params.hashes);
    println!("  bits_per_entry: {bits_per_entry:.3}");
    println!("  storage_mb: {storage_mb:.3}");
    println!(
        "  analytic_fp: {:.6}",
        bloom::false_positive_rate(args.files, params.bits, params.hashes)
    );
    println!("traffic estimate");
    println!("  model: own_share_bytes * fanout / period (entry cost rounded up to whole bytes)");
    println!("  nodes: {}", args.nodes);
    println!("  bytes_per_entry: {bytes_per_entry}");
    println!("  fanout: {}", args.fanout);
    println!("  period_secs: {}", args.period_secs);
    println!("  lifetime_days: {}", args.lifetime_days);
    println!("  bytes_per_sec: {traffic}");
    println!("  kbps: {:.1}", traffic / 1000.0);
    Ok(())
}

fn cmd_workload_curve(args: WorkloadCurveArgs) -> Result<(), CliError> {
    let alphas = parse_f64_list(&args.alpha, "--alpha")?;
    let grid = parse_f64_list(&args.coverage_grid, "--coverage-grid")?;
    let rows = figure2_curve(&alphas, args.files, &grid)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    match &args.out {
        Some(path) => {
            let mut out = create_out(path)?;
            write_curve_csv(&rows, &mut out)
                .map_err(|e| CliError::Runtime(format!("writing {}: {e}", path.display())))?;
        }
        None => {
            let stdout = std::io::stdout();
            write_curve_csv(&rows, stdout.lock())
                .map_err(|e| CliError::Runtime(e.to_string()))?;
        }
    }
    Ok(())
}

fn cmd_build_overlay(args: BuildOverlayArgs) -> Result<(), CliError> {
    let wiring: Wiring = args
        .wiring
        .parse()
        .map_err(|e: filoc::topology::TopologyError| CliError::Usage(e.to_string()))?;
    let spec = OverlaySpec {
        n_clusters: args.clusters,
        nodes_per_cluster: args.size,
        intra_degree: args.degree,
        wiring,
        wiring_param: args.param,
        seed: args.seed,
    };
    spec.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    let overlay = build_overlay(&spec).map_err(|e| CliError::Runtime(e.to_string()))?;

    let mut edges_out = create_out(&args.out)?;
    write_edge_list(overlay.graph(), &mut edges_out)
        .map_err(|e| CliError::Runtime(format!("writing {}: {e}", args.out.display())))?;
    let mut sidecar_path = args.out.clone().into_os_string();
    sidecar_path.push(".clusters.csv");
    let sidecar_path = PathBuf::from(sidecar_path);
    let mut sidecar = create_out(&sidecar_path)?;
    overlay
        .write_cluster_csv(&mut sidecar)
        .map_err(|e| CliError::Runtime(format!("writing {}: {e}", sidecar_path.display())))?;

    println!(
        "overlay: {} clusters x {} nodes, {} links ({} inter-cluster) -> {} + {}",
        overlay.n_clusters(),
        overlay.nodes_per_cluster(),
        overlay.graph().n_links(),
        overlay.inter_cluster_edges().count(),
        args.out.display(),
        sidecar_path.display()
    );
    Ok(())
}

fn cmd_simulate(args: SimulateArgs) -> Result<(), CliError> {
    let mut config = SimConfig::from_path(&args.config)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    if args.rounds_csv.is_some() {
        config.record_per_round = true;
    }
    let output = Sim::new(config)
        .map_err(|e| CliError::Runtime(e.to_string()))?
        .run();
    let mut metrics = output.metrics;

    if let Some(path) = &args.rounds_csv {
        let mut out = create_out(path)?;
        write_rounds_csv(&metrics.per_round, &mut out)
            .map_err(|e| CliError::Runtime(format!("writing {}: {e}", path.display())))?;
    }
    if args.rounds_csv.is_some() && args.out.is_some() {
        // The CSV already holds the per-round data; keep the JSON lean.
        metrics.per_round.clear();
    }
    let json = serde_json::to_string_pretty(&metrics).expect("metrics serialize");
    match &args.out {
        Some(path) => {
            let mut out = create_out(path)?;
            writeln!(out, "{json}")
                .map_err(|e| CliError::Runtime(format!("writing {}: {e}", path.display())))?;
        }
        None => println!("{json}"),
    }
    println!(
        "simulate: {} rounds, {} nodes, {} requests: {:.1}% local, {:.1}% remote, {} not found, {} unresolved, max clusters visited {}",
        metrics.rounds,
        metrics.n_nodes,
        metrics.requests_total,
        100.0 * metrics.served_local as f64 / metrics.requests_total.max(1) as f64,
        100.0 * metrics.served_remote as f64 / metrics.requests_total.max(1) as f64,
        metrics.not_found,
        metrics.unresolved,
        metrics.clusters_visited_max
    );
    Ok(())
}

//! Command-line front end: compute, homology, sweep and skeleton reports.
//!
//! Exit codes: 0 on success/match, 2 on a computed-vs-predicted mismatch,
//! 1 on any error.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use tilek::adjacency::{build_pair, AdjacencyError, SystemKind};
use tilek::graph::{BipartiteGraph, GraphError};
use tilek::homology::{contracted_complex, homology_report, HomologyError, HomologyReport};
use tilek::ktheory::{verify, GraphInfo, KTheoryError, VerificationReport};
use tilek::skeleton::{check_no_period, Skeleton, SkeletonError};
use tilek::sweep::{run_sweep, to_csv, to_json, to_text, SweepError, SweepSpec};
use thiserror::Error;

#[derive(Parser)]
#[command(
    name = "tilek",
    version,
    about = "Tile and 2t-gon systems over bipartite graphs: 2-rank axioms, K-theory, homology"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Refuse adjacency matrices larger than this dimension.
    #[arg(long, global = true, default_value_t = 5000)]
    max_dim: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Build a system, check the 2-rank axioms, compute its K-theory and
    /// compare against the closed form where one is stated.
    Compute {
        /// Graph spec: `complete:<alpha>,<beta>` or `file:<path>`.
        #[arg(long)]
        graph: String,
        /// System kind: pointed-tile, unpointed-tile, pointed-reflect,
        /// unpointed-polygon or pointed-star.
        #[arg(long)]
        kind: String,
        /// Half the polygon side count (tile kinds require 2).
        #[arg(long, default_value_t = 2)]
        t: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Homology of the contracted 2t-gon complex of a complete bipartite
    /// graph.
    Homology {
        #[arg(long)]
        graph: String,
        #[arg(long, default_value_t = 2)]
        t: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Verify a Cartesian grid of cells and summarise matches.
    Sweep {
        /// Inclusive alpha range, e.g. `2-6` or `4`.
        #[arg(long)]
        alpha: String,
        /// Inclusive beta range.
        #[arg(long)]
        beta: String,
        /// Comma-separated kinds.
        #[arg(long, value_delimiter = ',', required = true)]
        kinds: Vec<String>,
        /// Comma-separated t values, combined with every kind.
        #[arg(long = "t", value_delimiter = ',', default_value = "2")]
        t_values: Vec<u32>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write records here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker count (default: TILEK_JOBS, then the available cores).
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Connectivity, cycle and aperiodicity probes of the 1-skeleton.
    Skeleton {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        kind: String,
        #[arg(long, default_value_t = 2)]
        t: u32,
        /// Require the aperiodic-prefix probe (error when preconditions
        /// fail); by default it is skipped silently in that case.
        #[arg(long)]
        aperiodic: bool,
        /// Prefix side length for the aperiodicity probe.
        #[arg(long, default_value_t = 30)]
        length: usize,
        /// Maximum period shift (and suffix offset) scanned.
        #[arg(long, default_value_t = 10)]
        max_shift: usize,
        /// Start vertex index for the probe.
        #[arg(long, default_value_t = 0)]
        start: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Msg(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Adjacency(#[from] AdjacencyError),
    #[error(transparent)]
    KTheory(#[from] KTheoryError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Sweep(#[from] SweepError),
    #[error(transparent)]
    Skeleton(#[from] SkeletonError),
}

fn msg(s: impl Into<String>) -> CliError {
    CliError::Msg(s.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Compute {
            graph,
            kind,
            t,
            format,
        } => cmd_compute(&graph, &kind, t, format, cli.max_dim),
        Command::Homology { graph, t, format } => cmd_homology(&graph, t, format),
        Command::Sweep {
            alpha,
            beta,
            kinds,
            t_values,
            format,
            out,
            jobs,
        } => cmd_sweep(&alpha, &beta, kinds, t_values, format, out, jobs, cli.max_dim),
        Command::Skeleton {
            graph,
            kind,
            t,
            aperiodic,
            length,
            max_shift,
            start,
            format,
        } => cmd_skeleton(
            &graph, &kind, t, aperiodic, length, max_shift, start, format, cli.max_dim,
        ),
    }
}

fn parse_graph_spec(spec: &str) -> Result<BipartiteGraph, CliError> {
    if let Some(rest) = spec.strip_prefix("complete:") {
        let (a, b) = rest.split_once(',').ok_or_else(|| {
            msg(format!(
                "bad graph spec {spec:?}: expected complete:<alpha>,<beta>"
            ))
        })?;
        let alpha = a
            .trim()
            .parse()
            .map_err(|_| msg(format!("bad alpha in graph spec {spec:?}")))?;
        let beta = b
            .trim()
            .parse()
            .map_err(|_| msg(format!("bad beta in graph spec {spec:?}")))?;
        Ok(BipartiteGraph::complete(alpha, beta)?)
    } else if let Some(path) = spec.strip_prefix("file:") {
        let text = std::fs::read_to_string(path)?;
        Ok(BipartiteGraph::parse(&text)?)
    } else {
        Err(msg(format!(
            "bad graph spec {spec:?}: expected complete:<alpha>,<beta> or file:<path>"
        )))
    }
}

/// Inclusive range `lo-hi`, or a single value.
fn parse_range(text: &str, name: &'static str) -> Result<(u32, u32), CliError> {
    let parse = |s: &str| {
        s.trim()
            .parse::<u32>()
            .map_err(|_| msg(format!("bad {name} range {text:?}")))
    };
    match text.split_once('-') {
        Some((lo, hi)) => Ok((parse(lo)?, parse(hi)?)),
        None => {
            let v = parse(text)?;
            Ok((v, v))
        }
    }
}

fn guard_dimension(dim: usize, max_dim: usize) -> Result<(), CliError> {
    if dim > max_dim {
        return Err(msg(format!(
            "matrix dimension {dim} exceeds --max-dim {max_dim}; raise the limit to proceed"
        )));
    }
    Ok(())
}

fn order_text(o: &Option<u64>) -> String {
    o.map_or_else(|| "not stated".to_string(), |v| v.to_string())
}

fn render_report_text(r: &VerificationReport) -> String {
    let mut out = String::new();
    let g = &r.graph;
    let shape = if g.complete {
        format!("complete kappa({},{})", g.alpha, g.beta)
    } else {
        format!("bipartite {}+{} with {} edges", g.alpha, g.beta, g.edges)
    };
    let _ = writeln!(out, "graph: {shape}");
    let _ = writeln!(out, "kind: {} (t={})", r.kind, r.t);
    let c = &r.checks;
    let _ = writeln!(
        out,
        "checks: symmetric={} commute={} uce={} no_sources={} factorization={}",
        c.symmetric, c.commute, c.uce, c.no_sources, c.factorization
    );
    let _ = writeln!(out, "K0 = {}", r.computed.render());
    let _ = writeln!(
        out,
        "K0 predicted = {}",
        r.predicted
            .as_ref()
            .map_or_else(|| "not stated".to_string(), |p| p.render())
    );
    let _ = writeln!(
        out,
        "identity order = {} (predicted {})",
        r.identity_order_computed,
        order_text(&r.identity_order_predicted)
    );
    let _ = writeln!(out, "match: {}", r.matched);
    out
}

fn cmd_compute(
    graph: &str,
    kind: &str,
    t: u32,
    format: Format,
    max_dim: usize,
) -> Result<u8, CliError> {
    let g = parse_graph_spec(graph)?;
    let kind = SystemKind::new(kind, t)?;
    guard_dimension(kind.dimension(&g), max_dim)?;
    let report = verify(&g, kind)?;
    match format {
        Format::Text => print!("{}", render_report_text(&report)),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("report serializes")
        ),
        Format::Csv => return Err(msg("csv output is only available for sweep")),
    }
    Ok(if report.matched { 0 } else { 2 })
}

fn cmd_homology(graph: &str, t: u32, format: Format) -> Result<u8, CliError> {
    let g = parse_graph_spec(graph)?;
    let report = homology_report(&g, t)?;
    match format {
        Format::Text => print!("{}", render_homology_text(&g, t, &report)?),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("report serializes")
        ),
        Format::Csv => return Err(msg("csv output is only available for sweep")),
    }
    Ok(0)
}

fn render_homology_text(
    g: &BipartiteGraph,
    t: u32,
    r: &HomologyReport,
) -> Result<String, CliError> {
    let complex = contracted_complex(g, t)?;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "contracted 2t-gon complex of kappa({},{}), t={}",
        r.alpha, r.beta, r.t
    );
    let _ = writeln!(
        out,
        "cells: 1 zero-cell, {} one-cells, {} two-cells",
        complex.one_cells().len(),
        complex.two_cells().len()
    );
    let _ = writeln!(out, "H0 (reduced) = {}", r.h0_reduced.render());
    let _ = writeln!(out, "H0 (unreduced) = {}", r.h0_unreduced.render());
    let _ = writeln!(out, "H1 = {}", r.h1.render());
    let _ = writeln!(out, "H2 = {}", r.h2.render());
    let _ = writeln!(out, "euler characteristic = {}", r.euler_characteristic);
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    alpha: &str,
    beta: &str,
    kinds: Vec<String>,
    t_values: Vec<u32>,
    format: Format,
    out: Option<PathBuf>,
    jobs: Option<usize>,
    max_dim: usize,
) -> Result<u8, CliError> {
    let spec = SweepSpec {
        alpha_range: parse_range(alpha, "alpha")?,
        beta_range: parse_range(beta, "beta")?,
        kinds,
        t_values,
    };
    for cell in spec.cells()? {
        let g = BipartiteGraph::complete(cell.alpha, cell.beta)?;
        guard_dimension(cell.kind.dimension(&g), max_dim)?;
    }
    let jobs = jobs
        .or_else(|| {
            std::env::var("TILEK_JOBS")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        });
    let result = run_sweep(&spec, jobs)?;
    let rendered = match format {
        Format::Text => to_text(&result),
        Format::Csv => to_csv(&result),
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&to_json(&result)).expect("sweep serializes")
        ),
    };
    match out {
        Some(path) => {
            std::fs::write(&path, rendered)?;
            println!("{}", result.summary.line());
        }
        None => {
            print!("{rendered}");
            eprintln!("{}", result.summary.line());
        }
    }
    Ok(if result.summary.errors > 0 {
        1
    } else if result.summary.mismatches > 0 {
        2
    } else {
        0
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_skeleton(
    graph: &str,
    kind: &str,
    t: u32,
    aperiodic: bool,
    length: usize,
    max_shift: usize,
    start: usize,
    format: Format,
    max_dim: usize,
) -> Result<u8, CliError> {
    let g = parse_graph_spec(graph)?;
    let kind = SystemKind::new(kind, t)?;
    guard_dimension(kind.dimension(&g), max_dim)?;
    let (m1, m2) = build_pair(&g, kind)?;
    let sk = Skeleton::from_pair(&m1, &m2);
    if start >= sk.vertex_count() {
        return Err(msg(format!(
            "start vertex {start} out of range (0..{})",
            sk.vertex_count()
        )));
    }
    if max_shift >= length {
        return Err(msg("--max-shift must be smaller than --length"));
    }

    let prefix = match sk.aperiodic_prefix(start, length) {
        Ok(p) => Some(p),
        Err(e) if aperiodic => return Err(e.into()),
        Err(SkeletonError::InsufficientPartners { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let probe = prefix.map(|p| {
        let clean = check_no_period(&p, max_shift);
        (p, clean)
    });

    let sizes = sk.component_sizes();
    match format {
        Format::Text => {
            println!(
                "skeleton of {} (t={}) over the {}+{} graph: {} vertices",
                kind.cli_name(),
                kind.t(),
                g.alpha(),
                g.beta(),
                sk.vertex_count()
            );
            let sizes_text = sizes
                .iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(", ");
            println!("components: {} (sizes: {sizes_text})", sk.components());
            println!(
                "strongly_connected (cofinality proxy): {}",
                sk.is_strongly_connected()
            );
            println!("cycle_with_entrance: {}", sk.has_cycle_with_entrance());
            match &probe {
                Some((p, clean)) => {
                    println!(
                        "aperiodicity probe: start {} length {} max_shift {}",
                        sk.vertex_name(p.start()),
                        p.length(),
                        max_shift
                    );
                    println!("no_period_up_to_bounds: {clean}");
                }
                None => println!(
                    "aperiodicity probe: skipped (vertex {start} needs two blue and two magenta partners)"
                ),
            }
        }
        Format::Json => {
            let aperiodicity = probe.as_ref().map(|(p, clean)| {
                json!({
                    "length": p.length(),
                    "max_shift": max_shift,
                    "no_period_up_to_bounds": clean,
                    "prefix": p.to_json(),
                })
            });
            let report = json!({
                "graph": GraphInfo::of(&g),
                "kind": kind.cli_name(),
                "t": kind.t(),
                "vertices": sk.vertex_count(),
                "components": sk.components(),
                "component_sizes": sizes,
                "strongly_connected": sk.is_strongly_connected(),
                "cycle_with_entrance": sk.has_cycle_with_entrance(),
                "aperiodicity": aperiodicity,
                "notes": [
                    "strong connectivity is a finite proxy for cofinality",
                    "a clean period scan is evidence up to the bounds, not a proof of aperiodicity",
                ],
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("report serializes")
            );
        }
        Format::Csv => return Err(msg("csv output is only available for sweep")),
    }
    Ok(0)
}

//! Command-line surface. stdout carries machine-readable payload only;
//! diagnostics go to stderr. Exit codes: 0 success (or all claims passed),
//! 1 input error or claim failure, 2 validity-window rejection, 3 engine
//! disagreement.

use std::fs;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{enumerate_graphs, Graph};
use crate::measures::{q_profile, Engine, ProfileSource, QmRequest};
use crate::report::{
    render_ame, render_claims, render_enumerate, render_reports, EnumRow, OutputFormat,
};
use crate::stab::find_ame_graphs;
use crate::verify::{all_passed, run_claims};

/// Largest vertex count for exhaustive per-graph profile sweeps.
const MAX_ENUMERATE_PROFILE_VERTICES: usize = 7;

#[derive(Parser)]
#[command(
    name = "scottq",
    version,
    about = "Averaged bipartite entanglement of graph states, on dense and exact stabilizer engines"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Entanglement measure Q_m of a graph, averaged over size-m subsets
    Qm(QmArgs),
    /// Marginal purities of every requested subset size
    Purities(PuritiesArgs),
    /// Exhaustive sweep over n-vertex graphs with per-graph Q profiles
    Enumerate(EnumerateArgs),
    /// Graphs whose small marginals are all maximally mixed
    AmeSearch(AmeSearchArgs),
    /// Run the built-in claim suite and report pass/fail per claim
    VerifyPaper(VerifyPaperArgs),
}

#[derive(Args)]
struct QmArgs {
    /// Edge list "n: a-b, c-d", a graph6 string, or a file with one graph
    /// per line
    input: String,
    /// Subset size (repeatable); default: every size up to floor(n/2)
    #[arg(long = "m", value_name = "SIZE")]
    m: Vec<usize>,
    /// Purity engine: dense, stabilizer, or both (cross-checked)
    #[arg(long, default_value = "both")]
    engine: Engine,
    /// Also evaluate sizes above floor(n/2) via complement proportionality
    #[arg(long)]
    allow_complement: bool,
    /// Output format: json, csv, or text
    #[arg(long, default_value = "json")]
    format: OutputFormat,
    /// Write the report here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PuritiesArgs {
    /// Edge list "n: a-b, c-d", a graph6 string, or a file with one graph
    /// per line
    input: String,
    /// Subset size (repeatable); default: every size up to floor(n/2)
    #[arg(long = "m", value_name = "SIZE")]
    m: Vec<usize>,
    /// Purity engine: dense, stabilizer, or both (cross-checked)
    #[arg(long, default_value = "both")]
    engine: Engine,
    /// Output format: json, csv, or text
    #[arg(long, default_value = "json")]
    format: OutputFormat,
    /// Write the report here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EnumerateArgs {
    /// Vertex count (2..=7)
    n: usize,
    /// Keep connected graphs only
    #[arg(long)]
    connected_only: bool,
    /// One representative per isomorphism class instead of all labelings
    #[arg(long)]
    up_to_iso: bool,
    /// Subset size (repeatable); default: every size up to floor(n/2)
    #[arg(long = "m", value_name = "SIZE")]
    m: Vec<usize>,
    /// Purity engine: dense, stabilizer, or both (cross-checked)
    #[arg(long, default_value = "both")]
    engine: Engine,
    /// Also evaluate sizes above floor(n/2) via complement proportionality
    #[arg(long)]
    allow_complement: bool,
    /// Output format: json, csv, or text
    #[arg(long, default_value = "json")]
    format: OutputFormat,
    /// Write the report here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AmeSearchArgs {
    /// Vertex count (1..=7)
    n: usize,
    /// Output format: json, csv, or text
    #[arg(long, default_value = "json")]
    format: OutputFormat,
    /// Write the report here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyPaperArgs {
    /// Base seed for the random-state claims
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Output format: json, csv, or text
    #[arg(long, default_value = "json")]
    format: OutputFormat,
    /// Write the report here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

/// Parse arguments, run, translate errors to exit codes.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.cmd {
        Cmd::Qm(a) => cmd_qm(a),
        Cmd::Purities(a) => cmd_purities(a),
        Cmd::Enumerate(a) => cmd_enumerate(a),
        Cmd::AmeSearch(a) => cmd_ame_search(a),
        Cmd::VerifyPaper(a) => cmd_verify_paper(a),
    }
}

/// Interpret `input` as an edge-list string, an existing file (one graph
/// per line, edge list or graph6), or a bare graph6 string, in that order.
fn load_graphs(input: &str) -> Result<Vec<Graph>> {
    if input.contains(':') {
        return Ok(vec![Graph::parse_edge_list(input)?]);
    }
    let path = Path::new(input);
    if path.is_file() {
        let text = fs::read_to_string(path)?;
        let mut graphs = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let g = if line.contains(':') {
                Graph::parse_edge_list(line)?
            } else {
                Graph::parse_graph6(line)?
            };
            graphs.push(g);
        }
        if graphs.is_empty() {
            return Err(Error::Syntax(format!("no graphs found in file {input:?}")));
        }
        return Ok(graphs);
    }
    Ok(vec![Graph::parse_graph6(input)?])
}

fn write_output(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_qm(a: QmArgs) -> Result<i32> {
    let graphs = load_graphs(&a.input)?;
    let req = QmRequest::new(a.m, a.allow_complement, a.engine);
    let reports = graphs
        .iter()
        .map(|g| q_profile(ProfileSource::Graph(g), &req))
        .collect::<Result<Vec<_>>>()?;
    write_output(
        &render_reports(&reports, "qm", true, a.format),
        a.out.as_deref(),
    )?;
    Ok(0)
}

fn cmd_purities(a: PuritiesArgs) -> Result<i32> {
    let graphs = load_graphs(&a.input)?;
    // Purities are well-defined for every subset size; the measure-level
    // window does not apply here, so complements are always allowed.
    let req = QmRequest::new(a.m, true, a.engine);
    let reports = graphs
        .iter()
        .map(|g| q_profile(ProfileSource::Graph(g), &req))
        .collect::<Result<Vec<_>>>()?;
    write_output(
        &render_reports(&reports, "purities", false, a.format),
        a.out.as_deref(),
    )?;
    Ok(0)
}

fn cmd_enumerate(a: EnumerateArgs) -> Result<i32> {
    if a.n > MAX_ENUMERATE_PROFILE_VERTICES {
        return Err(Error::Overflow(format!(
            "profile sweeps are limited to {MAX_ENUMERATE_PROFILE_VERTICES} vertices, got {}",
            a.n
        )));
    }
    let graphs = enumerate_graphs(a.n, a.connected_only, a.up_to_iso)?;
    let req = QmRequest::new(a.m, a.allow_complement, a.engine);
    // Rows are independent; evaluate them in parallel. Indexed collect
    // keeps the output order (and therefore the bytes) deterministic.
    let rows = graphs
        .par_iter()
        .map(|g| {
            Ok(EnumRow {
                graph6: g.to_graph6()?,
                report: q_profile(ProfileSource::Graph(g), &req)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let text = render_enumerate(
        a.n,
        &a.engine.to_string(),
        a.connected_only,
        a.up_to_iso,
        &rows,
        a.format,
    );
    write_output(&text, a.out.as_deref())?;
    Ok(0)
}

fn cmd_ame_search(a: AmeSearchArgs) -> Result<i32> {
    let graphs = find_ame_graphs(a.n)?
        .iter()
        .map(Graph::to_graph6)
        .collect::<Result<Vec<_>>>()?;
    write_output(&render_ame(a.n, &graphs, a.format), a.out.as_deref())?;
    Ok(0)
}

fn cmd_verify_paper(a: VerifyPaperArgs) -> Result<i32> {
    let claims = run_claims(a.seed)?;
    write_output(&render_claims(a.seed, &claims, a.format), a.out.as_deref())?;
    Ok(if all_passed(&claims) { 0 } else { 1 })
}

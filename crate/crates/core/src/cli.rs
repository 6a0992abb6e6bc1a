//! Command-line interface: argument definitions and command dispatch.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Rational64;
use num_traits::ToPrimitive;

use crate::census::{census, census_union, CensusConfig, CensusRow};
use crate::error::{Error, Result};
use crate::filtering::{apply_spectral, apply_vertex_domain, FilterCoeffs, ZeroPadFilter};
use crate::graph::{Dag, Digraph};
use crate::io;
use crate::padding::{connect_dag, zero_pad_general, PadOptions, PaddedDag};
use crate::spectral::{eigendecompose, EigenDecomposition, SpectralConfig};

#[derive(Debug, Parser)]
#[command(
    name = "dagzp",
    version,
    about = "Zero-padding and Fourier analysis for directed acyclic graphs"
)]
pub struct CliConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print size, sources, sinks, nilpotency index and Hamiltonian path.
    Info(InputArgs),
    /// Add edges until the DAG has a Hamiltonian path.
    Connect(ConnectArgs),
    /// Zero-pad a DAG and write the padded graph as JSON.
    Zeropad(ZeropadArgs),
    /// Eigenvalues, frequencies and total variation of the (padded) graph.
    Spectrum(SpectrumArgs),
    /// Graph Fourier transform of a signal on the padded graph.
    Gft(GftArgs),
    /// Apply a polynomial graph filter.
    Filter(FilterArgs),
    /// Count connected DAGs whose closed adjacency has distinct eigenvalues.
    Census(CensusArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Vertex,
    #[default]
    Spectral,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Edge list (`u v [w]` per line) or JSON graph.
    #[arg(short, long)]
    pub input: PathBuf,
    /// Output file; standard output when omitted.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ConnectArgs {
    #[command(flatten)]
    pub io: InputArgs,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct PadArgs {
    /// Padding vertices per added path.
    #[arg(short = 'm', long = "pad")]
    pub pad: Option<usize>,
    /// Weight of the edge leaving the sink on the return path (e.g. `1/2`).
    #[arg(short, long, default_value = "1", value_parser = parse_weight)]
    pub weight: Rational64,
    /// Renumber vertices along the Hamiltonian path first.
    #[arg(long)]
    pub renumber: bool,
}

#[derive(Debug, Args)]
pub struct TolArgs {
    /// Relative eigenvalue gap treated as coincident.
    #[arg(long)]
    pub tol_gap: Option<f64>,
    /// Largest accepted eigenvector condition number.
    #[arg(long)]
    pub tol_cond: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ZeropadArgs {
    #[command(flatten)]
    pub io: InputArgs,
    #[command(flatten)]
    pub pad: PadArgs,
    /// Also write the padded adjacency matrix as CSV.
    #[arg(long)]
    pub adjacency: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub io: InputArgs,
    #[command(flatten)]
    pub pad: PadArgs,
    #[command(flatten)]
    pub tol: TolArgs,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct GftArgs {
    #[command(flatten)]
    pub io: InputArgs,
    /// Signal file: one value per line or `vertex,value` rows.
    #[arg(short, long)]
    pub signal: PathBuf,
    #[command(flatten)]
    pub pad: PadArgs,
    #[command(flatten)]
    pub tol: TolArgs,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct FilterArgs {
    #[command(flatten)]
    pub io: InputArgs,
    /// Signal file: one value per line or `vertex,value` rows.
    #[arg(short, long)]
    pub signal: PathBuf,
    /// Coefficients `h0,h1,...` or a file with one per line.
    #[arg(short, long)]
    pub coeffs: String,
    #[command(flatten)]
    pub pad: PadArgs,
    #[command(flatten)]
    pub tol: TolArgs,
    /// Evaluate the filter directly on the DAG or through the padded spectrum.
    #[arg(long, value_enum, default_value_t)]
    pub mode: Mode,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct CensusArgs {
    /// Vertex count.
    #[arg(short, long)]
    pub n: usize,
    /// Padding vertices on the return path.
    #[arg(long, default_value_t = 0)]
    pub zp: usize,
    /// Weight of the first return edge, e.g. `1/2`.
    #[arg(short, long, default_value = "1", value_parser = parse_weight)]
    pub weight: Rational64,
    /// Worker threads.
    #[arg(long, env = "DAGZP_WORKERS")]
    pub workers: Option<usize>,
    /// Compare zp=0 with zp=1 graph by graph instead.
    #[arg(long)]
    pub union: bool,
    /// Write the bitmask of every graph with a repeated eigenvalue here.
    #[arg(long)]
    pub dump_failures: Option<PathBuf>,
    /// Largest accepted n.
    #[arg(long, default_value_t = crate::census::DEFAULT_MAX_N)]
    pub max_n: usize,
    /// Output file; standard output when omitted.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

/// Accepts `a/b`, integers and decimals.
pub fn parse_weight(s: &str) -> std::result::Result<Rational64, String> {
    let s = s.trim();
    let w = Rational64::from_str(s)
        .ok()
        .or_else(|| {
            s.parse::<f64>()
                .ok()
                .and_then(Rational64::approximate_float)
        })
        .ok_or_else(|| format!("invalid weight {s:?}"))?;
    if w == Rational64::from_integer(0) {
        return Err("weight must be nonzero".into());
    }
    Ok(w)
}

impl PadArgs {
    fn options(&self) -> PadOptions<f64> {
        let w = self.weight.to_f64().expect("finite ratio");
        let opts = PadOptions::with_weight(w);
        if self.renumber {
            opts.renumbered()
        } else {
            opts
        }
    }

    fn pad_dag(&self, dag: &Dag<f64>, pad: usize) -> Result<PaddedDag<f64>> {
        zero_pad_general(dag, pad, &self.options())
    }
}

impl TolArgs {
    fn config(&self) -> SpectralConfig<f64> {
        let mut cfg = SpectralConfig::default();
        if let Some(g) = self.tol_gap {
            cfg.gap_tol = g;
        }
        if let Some(c) = self.tol_cond {
            cfg.cond_tol = c;
        }
        cfg
    }
}

fn emit(path: Option<&Path>, out: &mut dyn Write, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn join(ids: &[usize]) -> String {
    ids.iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// Runs one command, writing primary output to `--output` or `out` and
/// diagnostics to `err`.
pub fn run(cfg: CliConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    match cfg.command {
        Command::Info(a) => cmd_info(&a, out),
        Command::Connect(a) => cmd_connect(&a, out),
        Command::Zeropad(a) => cmd_zeropad(&a, out),
        Command::Spectrum(a) => cmd_spectrum(&a, out),
        Command::Gft(a) => cmd_gft(&a, out),
        Command::Filter(a) => cmd_filter(&a, out, err),
        Command::Census(a) => cmd_census(&a, out),
    }
}

pub fn cmd_info(a: &InputArgs, out: &mut dyn Write) -> Result<()> {
    let dag = io::read_dag(&a.input)?;
    let hp = dag
        .hamiltonian_path()
        .map_or_else(|| "none".to_string(), |p| join(&p));
    let text = format!(
        "n: {}\nedges: {}\nsources: {}\nsinks: {}\nnilpotency index: {}\nconnected: {}\nhamiltonian: {}\n",
        dag.n(),
        dag.edge_count(),
        join(&dag.sources()),
        join(&dag.sinks()),
        dag.nilpotency_index(),
        dag.is_connected(),
        hp
    );
    emit(a.output.as_deref(), out, &text)
}

pub fn cmd_connect(a: &ConnectArgs, out: &mut dyn Write) -> Result<()> {
    let dag = io::read_dag(&a.io.input)?;
    let conn = connect_dag(&dag)?;
    let text = match a.format {
        Format::Csv => {
            let mut s = String::from("# added edges\n");
            for (u, v) in &conn.added {
                s.push_str(&format!("# {u} {v}\n"));
            }
            s + &io::write_edge_list(conn.dag.as_digraph())
        }
        Format::Json => serde_json::to_string_pretty(&serde_json::json!({
            "added": conn.added,
            "iterations": conn.iterations,
            "graph": serde_json::from_str::<serde_json::Value>(&io::write_graph_json(conn.dag.as_digraph())?)?,
        }))?,
    };
    emit(a.io.output.as_deref(), out, &text)
}

pub fn cmd_zeropad(a: &ZeropadArgs, out: &mut dyn Write) -> Result<()> {
    let dag = io::read_dag(&a.io.input)?;
    let padded = a.pad.pad_dag(&dag, a.pad.pad.unwrap_or(0))?;
    if let Some(path) = &a.adjacency {
        fs::write(path, padded.graph().adjacency_matrix().to_csv())?;
    }
    emit(
        a.io.output.as_deref(),
        out,
        &io::write_padded_json(&padded)?,
    )
}

type Decomposed = (
    Option<PaddedDag<f64>>,
    Digraph<f64>,
    EigenDecomposition<f64>,
);

/// Decomposes the padded graph, or the raw graph when no pad size is given.
fn decompose(input: &Path, pad: &PadArgs, tol: &TolArgs) -> Result<Decomposed> {
    let graph = io::parse_graph(&fs::read_to_string(input)?)?;
    let (padded, matrix) = match pad.pad {
        Some(m) => {
            let p = pad.pad_dag(&Dag::from_digraph(graph.clone())?, m)?;
            let a = p.graph().adjacency_matrix();
            (Some(p), a)
        }
        None => (None, graph.adjacency_matrix()),
    };
    let d = eigendecompose(&matrix, &tol.config())?;
    Ok((padded, graph, d))
}

pub fn cmd_spectrum(a: &SpectrumArgs, out: &mut dyn Write) -> Result<()> {
    let (_, _, d) = decompose(&a.io.input, &a.pad, &a.tol)?;
    let report = d.spectrum_report()?;
    let text = match a.format {
        Format::Csv => report.to_csv(),
        Format::Json => report.to_json()?,
    };
    emit(a.io.output.as_deref(), out, &text)
}

pub fn cmd_gft(a: &GftArgs, out: &mut dyn Write) -> Result<()> {
    let (padded, _, d) = decompose(&a.io.input, &a.pad, &a.tol)?;
    let x = io::parse_signal(&fs::read_to_string(&a.signal)?)?;
    let x = match &padded {
        Some(p) => p.pad_signal(&x)?.into_inner(),
        None => x,
    };
    let xh = d.gft(&x)?;
    let omega = d.frequencies();
    let text = match a.format {
        Format::Csv => {
            let mut s = String::from("k,omega,re,im\n");
            for (k, (c, w)) in xh.iter().zip(&omega).enumerate() {
                s.push_str(&format!("{},{},{},{}\n", k + 1, w, c.re, c.im));
            }
            s
        }
        Format::Json => serde_json::to_string_pretty(
            &xh.iter()
                .zip(&omega)
                .enumerate()
                .map(|(k, (c, w))| serde_json::json!({"k": k + 1, "omega": w, "re": c.re, "im": c.im}))
                .collect::<Vec<_>>(),
        )?,
    };
    emit(a.io.output.as_deref(), out, &text)
}

fn read_coeffs(arg: &str) -> Result<FilterCoeffs<f64>> {
    let path = Path::new(arg);
    let text = if path.is_file() {
        fs::read_to_string(path)?
    } else {
        arg.to_string()
    };
    FilterCoeffs::new(io::parse_coefficients(&text)?)
}

pub fn cmd_filter(a: &FilterArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let h = read_coeffs(&a.coeffs)?;
    let x = io::parse_signal(&fs::read_to_string(&a.signal)?)?;
    let graph = io::parse_graph(&fs::read_to_string(&a.io.input)?)?;
    let reference = apply_vertex_domain(&graph, &h, &x)?.into_inner();
    let y = match a.mode {
        Mode::Vertex => reference.clone(),
        Mode::Spectral => {
            let y = match a.pad.pad {
                Some(m) => {
                    let dag = Dag::from_digraph(graph.clone())?;
                    ZeroPadFilter::new(&dag, m, &a.pad.options(), &a.tol.config())?.apply(&h, &x)?
                }
                None => {
                    let d = eigendecompose(&graph.adjacency_matrix(), &a.tol.config())?;
                    apply_spectral(&d, &h, &x)?
                }
            };
            let dev = y
                .iter()
                .zip(&reference)
                .map(|(p, q)| (p - q).abs())
                .fold(0.0, f64::max);
            writeln!(err, "max deviation from vertex domain: {dev:e}")?;
            y.into_inner()
        }
    };
    let text = match a.format {
        Format::Csv => io::write_signal(&y),
        Format::Json => serde_json::to_string(&y)?,
    };
    emit(a.io.output.as_deref(), out, &text)
}

pub fn cmd_census(a: &CensusArgs, out: &mut dyn Write) -> Result<()> {
    let cfg = CensusConfig {
        max_n: a.max_n,
        workers: a.workers,
        collect_failures: a.dump_failures.is_some(),
    };
    let text = if a.union {
        if a.dump_failures.is_some() {
            return Err(Error::InvalidArgument(
                "--dump-failures does not apply to --union".into(),
            ));
        }
        let row = census_union(a.n, &cfg)?;
        match a.format {
            Format::Csv => format!(
                "n,total,resolved_by_edge,resolved_by_1zp,unresolved,lost_by_1zp\n{},{},{},{},{},{}\n",
                row.n, row.total, row.resolved_by_edge, row.resolved_by_1zp, row.unresolved, row.lost_by_1zp
            ),
            Format::Json => serde_json::to_string_pretty(&row)?,
        }
    } else {
        let outcome = census(a.n, a.zp, a.weight, &cfg)?;
        if let Some(path) = &a.dump_failures {
            let lines: String = outcome.failures.iter().map(|m| format!("{m}\n")).collect();
            fs::write(path, lines)?;
        }
        match a.format {
            Format::Csv => format!("{}\n{}\n", CensusRow::CSV_HEADER, outcome.row.to_csv_line()),
            Format::Json => {
                let mut v = serde_json::to_value(&outcome.row)?;
                v["repeated_pct"] = serde_json::json!(outcome.row.repeated_pct());
                serde_json::to_string_pretty(&v)?
            }
        }
    };
    emit(a.output.as_deref(), out, &text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn definition_is_consistent() {
        CliConfig::command().debug_assert();
    }

    #[test]
    fn weights() {
        assert_eq!(parse_weight("1/2").unwrap(), Rational64::new(1, 2));
        assert_eq!(parse_weight("0.5").unwrap(), Rational64::new(1, 2));
        assert_eq!(parse_weight("3").unwrap(), Rational64::from_integer(3));
        assert!(parse_weight("0").is_err());
        assert!(parse_weight("x").is_err());
    }

    #[test]
    fn unknown_flag_rejected() {
        assert!(CliConfig::try_parse_from(["dagzp", "info", "-i", "g.txt", "--bogus"]).is_err());
    }

    #[test]
    fn census_n2() {
        let cfg = CliConfig::try_parse_from(["dagzp", "census", "-n", "2"]).unwrap();
        let mut out = Vec::new();
        run(cfg, &mut out, &mut Vec::new()).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text.lines().nth(1).unwrap(), "2,0,1,1,1,0,0.00");
    }
}

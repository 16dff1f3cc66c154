//! Batch command-line front end. Every run writes its artifacts and a
//! `report.json` into a directory named after a hash of the configuration.

pub mod artifacts;
mod check;
mod commands;

use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use artifacts::{config_hash, ArtifactDir, Report};

pub use check::run_suite;

/// Environment variable limiting the worker thread count.
pub const THREADS_ENV: &str = "METRIC_BOUNDARY_THREADS";

#[derive(Parser, Debug, Clone, Serialize)]
#[command(name = "metric-boundary", version, about = "Boundary partitions, exit measures, Haar bases and DtN maps of metric graphs")]
pub struct Cli {
    /// Parent directory for artifact folders.
    #[arg(long, global = true, default_value = "out")]
    #[serde(skip)]
    pub out: PathBuf,

    /// Seed for every randomized check.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum Command {
    /// Emit a family graph in the JSON wire format.
    Gen(FamilyArgs),
    /// Canonical nested partitions of the boundary with jump values.
    Partitions {
        #[command(flatten)]
        family: FamilyArgs,
        /// Graph JSON; overrides the family flags.
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    /// Harmonic extension of boundary data.
    Solve {
        #[arg(long)]
        graph: PathBuf,
        /// JSON object mapping boundary vertex ids to values.
        #[arg(long)]
        values: PathBuf,
    },
    /// Dirichlet-to-Neumann matrix of a graph.
    Dtn {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "counting")]
        mu: MuKind,
        /// JSON object of boundary weights; overrides --mu.
        #[arg(long)]
        weights: Option<PathBuf>,
        /// Compare against the dense Schur complement.
        #[arg(long)]
        check: bool,
    },
    /// Compressed DtN maps on successive truncations of a tree.
    DtnLimit {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        limit: LimitArgs,
        #[arg(long, value_enum, default_value = "exit")]
        measure: MeasureKind,
    },
    /// Exit measure on boundary cells, with its truncation limit.
    ExitMeasure {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        limit: LimitArgs,
        /// Report masses divided by the total.
        #[arg(long)]
        normalize: bool,
    },
    /// Generalized Haar basis of a tree boundary.
    Haar {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        basis: BasisArgs,
        /// Verify orthonormality, Parseval and reconstruction.
        #[arg(long)]
        check: bool,
    },
    /// Analyze, synthesize or apply the multiresolution operator.
    HaarApply {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        basis: BasisArgs,
        #[arg(long, value_enum)]
        mode: HaarMode,
        /// CSV with a `value` column: one value per finest cell, or one
        /// coefficient per basis function for `synthesize`.
        #[arg(long)]
        input: PathBuf,
    },
    /// Spine values of the pendant-spine graph from the flux recurrence.
    Counterexample {
        #[arg(long, default_value_t = 50)]
        spine: usize,
        #[arg(long, default_value_t = 2)]
        pendant_exponent: u32,
        /// Cross-check against the full Dirichlet solve.
        #[arg(long)]
        check: bool,
    },
    /// Run the full invariant suite.
    Check,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    Kary,
    Counterexample,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct FamilyArgs {
    #[arg(long, value_enum, default_value = "kary")]
    pub family: FamilyKind,
    #[arg(long, default_value_t = 2)]
    pub arity: u32,
    #[arg(long, default_value_t = 0.25)]
    pub ratio: f64,
    #[arg(long, default_value_t = 1.0)]
    pub base_length: f64,
    #[arg(long, default_value_t = 3)]
    pub depth: usize,
    #[arg(long, default_value_t = 50)]
    pub spine: usize,
    #[arg(long, default_value_t = 2)]
    pub pendant_exponent: u32,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct LimitArgs {
    /// Vertex id of the source; `t` is the root.
    #[arg(long, default_value = "t")]
    pub source_vertex: String,
    #[arg(long, default_value_t = 1)]
    pub level: usize,
    /// `a:b` (inclusive) or a comma-separated list.
    #[arg(long, default_value = "4:14")]
    pub depths: Depths,
    /// Stop once successive results differ by less than this in max norm
    /// [default: 1e-8 for exit-measure, 1e-6 for dtn-limit].
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct BasisArgs {
    #[arg(long, value_enum, default_value = "rho")]
    pub measure: MeasureKind,
    /// Source vertex for `--measure exit`.
    #[arg(long, default_value = "t")]
    pub source_vertex: String,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MeasureKind {
    Rho,
    Counting,
    Exit,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MuKind {
    /// Unit weight per boundary vertex.
    Counting,
    /// Total weight one, split evenly.
    Uniform,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HaarMode {
    Analyze,
    Synthesize,
    Operator,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Depths(pub Vec<usize>);

impl FromStr for Depths {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let bad = |_| format!("bad depth schedule `{s}`");
        let v: Vec<usize> = match s.split_once(':') {
            Some((a, b)) => (a.trim().parse().map_err(bad)?..=b.trim().parse().map_err(bad)?).collect(),
            None => s.split(',').map(|x| x.trim().parse().map_err(bad)).collect::<std::result::Result<_, _>>()?,
        };
        if v.is_empty() || v.windows(2).any(|w| w[0] >= w[1]) {
            return Err(format!("depth schedule `{s}` must be nonempty and strictly increasing"));
        }
        Ok(Depths(v))
    }
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Gen(_) => "gen",
            Command::Partitions { .. } => "partitions",
            Command::Solve { .. } => "solve",
            Command::Dtn { .. } => "dtn",
            Command::DtnLimit { .. } => "dtn-limit",
            Command::ExitMeasure { .. } => "exit-measure",
            Command::Haar { .. } => "haar",
            Command::HaarApply { .. } => "haar-apply",
            Command::Counterexample { .. } => "counterexample",
            Command::Check => "check",
        }
    }

    fn inputs(&self) -> Vec<&Path> {
        match self {
            Command::Partitions { graph, .. } => graph.iter().map(|p| p.as_path()).collect(),
            Command::Solve { graph, values } => vec![graph, values],
            Command::Dtn { graph, weights, .. } => graph.iter().chain(weights).map(|p| p.as_path()).collect(),
            Command::HaarApply { input, .. } => vec![input],
            _ => Vec::new(),
        }
    }
}

/// Outcome of a completed run.
#[derive(Debug)]
pub struct RunSummary {
    pub dir: PathBuf,
    pub report: Report,
}

/// Executes one command and writes its artifacts and report.
pub fn run(cli: &Cli) -> Result<RunSummary> {
    let config = serde_json::to_value(cli)?;
    let inputs = cli
        .command
        .inputs()
        .into_iter()
        .map(|p| std::fs::read(p).map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", p.display())))))
        .collect::<Result<Vec<_>>>()?;
    // input files enter the hash by content, not by path
    let mut hashed = config.clone();
    if let Some(cmd) = hashed.get_mut("command").and_then(|c| c.as_object_mut()) {
        for key in ["graph", "values", "weights", "input"] {
            cmd.remove(key);
        }
    }
    let hash = config_hash(&hashed, &inputs);
    let name = cli.command.name();
    let mut dir = ArtifactDir::create(&cli.out, name, &hash)?;
    let assertions = commands::dispatch(cli, &mut dir)?;
    let mut report = Report {
        command: name.to_string(),
        config_hash: hash,
        config,
        passed: assertions.iter().all(|a| a.passed),
        assertions,
        artifacts: dir.written().to_vec(),
    };
    report.artifacts.push("report.json".into());
    let mut text = serde_json::to_string_pretty(&report)?;
    text.push('\n');
    dir.write("report.json", text.as_bytes())?;
    Ok(RunSummary { dir: dir.path().to_path_buf(), report })
}

fn error_json(kind: &str, message: &str) -> String {
    serde_json::json!({ "error": { "kind": kind, "message": message } }).to_string()
}

fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()) {
        // a second initialization in the same process is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

/// Process entry point: 0 when every assertion passed, 1 when a check
/// failed, 2 on errors (reported as JSON on stderr).
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            eprintln!("{}", error_json("usage", e.to_string().trim()));
            return 2;
        }
    };
    configure_threads();
    match run(&cli) {
        Ok(summary) => {
            let failed: Vec<&str> =
                summary.report.assertions.iter().filter(|a| !a.passed).map(|a| a.name.as_str()).collect();
            println!(
                "{}",
                serde_json::json!({
                    "dir": summary.dir.display().to_string(),
                    "passed": summary.report.passed,
                    "assertions": summary.report.assertions.len(),
                    "failed": failed,
                })
            );
            if summary.report.passed {
                0
            } else {
                eprintln!("{}", error_json("check_failed", &format!("failed assertions: {}", failed.join(", "))));
                1
            }
        }
        Err(e) => {
            eprintln!("{}", error_json(e.kind(), &e.to_string()));
            2
        }
    }
}

pub fn main() -> i32 {
    main_with_args(std::env::args_os())
}

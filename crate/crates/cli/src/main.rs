//! `dualsep`: ingest incidence data, evaluate orders and shifts, search
//! tangles, run the theorem checks and print homology reports.

mod commands;
mod source;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use source::{GraphSource, UniverseArg};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lib(#[from] dualsep::Error),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

#[derive(Debug, Parser)]
#[command(name = "dualsep", version, about = "Tangles of dual separation systems of bipartite graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Json,
    CsvSummary,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Output {
    /// Write the report here instead of stdout.
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Caps {
    /// Largest separation system handed to the tangle search.
    #[arg(long, default_value_t = 24)]
    pub cap_seps: usize,
    /// Largest edge set whose separations are enumerated.
    #[arg(long, default_value_t = 10)]
    pub cap_edges: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KindArg {
    Tangle,
    Profile,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case", tag = "command")]
enum Command {
    /// Read a graph and report its sizes and duplicate separations. `--out`
    /// receives the graph as JSON.
    Ingest {
        #[command(flatten)]
        source: GraphSource,
        #[command(flatten)]
        output: Output,
    },
    /// List the separations of order `< k`.
    Enumerate {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long, value_enum)]
        universe: UniverseArg,
        /// Twice the order bound `k`.
        #[arg(long)]
        k2: u64,
        #[command(flatten)]
        caps: Caps,
        #[command(flatten)]
        output: Output,
    },
    /// Order of one separation, written `a,b|c`.
    Order {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long, value_enum)]
        universe: UniverseArg,
        #[arg(long, allow_hyphen_values = true)]
        sep: String,
        #[command(flatten)]
        output: Output,
    },
    /// Shift one separation to another universe.
    Shift {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long, value_enum)]
        universe: UniverseArg,
        /// Target universe; defaults to the other side (`x` for `e`).
        #[arg(long, value_enum)]
        to: Option<UniverseArg>,
        #[arg(long, allow_hyphen_values = true)]
        sep: String,
        #[command(flatten)]
        output: Output,
    },
    /// All tangles or regular profiles of `S_k`.
    Tangles {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long, value_enum)]
        universe: UniverseArg,
        #[arg(long)]
        k2: u64,
        #[arg(long, value_enum, default_value_t = KindArg::Tangle)]
        kind: KindArg,
        #[command(flatten)]
        caps: Caps,
        #[command(flatten)]
        output: Output,
    },
    /// Check every theorem over the shipped corpus.
    Verify {
        /// First corpus seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        corpus_size: u64,
        /// Doubled k values, comma separated.
        #[arg(long, value_delimiter = ',', default_values_t = vec![1u64, 2, 3, 4])]
        k_grid: Vec<u64>,
        #[command(flatten)]
        output: Output,
    },
    /// Boundary matrix, kernel and deciders of a separation system.
    Homology {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long, value_enum)]
        universe: UniverseArg,
        /// Twice the order bound; the system is `S_k` unless `--sep` is given.
        #[arg(long, default_value_t = 2)]
        k2: u64,
        /// Explicit members of the system, in their default orientation.
        #[arg(long, allow_hyphen_values = true)]
        sep: Vec<String>,
        #[arg(long, value_enum, default_value_t = KindArg::Tangle)]
        kind: KindArg,
        /// Largest `|μ_v|` in the decider search; defaults to `|S|`.
        #[arg(long)]
        bound: Option<i64>,
        #[arg(long, value_enum, default_value_t = commands::ConditionArg::Componentwise)]
        condition: commands::ConditionArg,
        #[arg(long, value_enum, default_value_t = commands::ConstraintArg::Free)]
        constraint: commands::ConstraintArg,
        #[command(flatten)]
        caps: Caps,
        #[command(flatten)]
        output: Output,
    },
}

impl Command {
    fn output(&self) -> &Output {
        match self {
            Command::Ingest { output, .. }
            | Command::Enumerate { output, .. }
            | Command::Order { output, .. }
            | Command::Shift { output, .. }
            | Command::Tangles { output, .. }
            | Command::Verify { output, .. }
            | Command::Homology { output, .. } => output,
        }
    }
}

#[derive(Serialize)]
struct Envelope<'a, R: Serialize> {
    tool: &'static str,
    version: &'static str,
    library_version: &'static str,
    config: &'a Command,
    result: R,
}

/// What a command produced: the JSON result, flat summary rows, an optional
/// side artifact, and whether an invariant failed.
pub struct Report {
    pub result: serde_json::Value,
    pub summary: Vec<(String, String)>,
    pub artifact: Option<String>,
    pub failed: bool,
}

fn render(cmd: &Command, report: &Report) -> Result<String, CliError> {
    Ok(match cmd.output().format {
        Format::Json => {
            let env = Envelope {
                tool: "dualsep",
                version: env!("CARGO_PKG_VERSION"),
                library_version: dualsep::VERSION,
                config: cmd,
                result: &report.result,
            };
            let mut s = serde_json::to_string_pretty(&env)
                .map_err(|e| CliError::Usage(format!("serialization failed: {e}")))?;
            s.push('\n');
            s
        }
        Format::CsvSummary => {
            let mut s = format!("key,value\nversion,{}\n", env!("CARGO_PKG_VERSION"));
            for (k, v) in &report.summary {
                s.push_str(&format!("{k},{v}\n"));
            }
            s
        }
    })
}

fn run(cmd: &Command) -> Result<bool, CliError> {
    let report = commands::dispatch(cmd)?;
    let text = render(cmd, &report)?;
    let out = &cmd.output().out;
    match (&report.artifact, out) {
        // Ingest writes the graph to --out and the report to stdout.
        (Some(artifact), Some(path)) => {
            fs::write(path, artifact).map_err(|e| CliError::Io { path: path.clone(), source: e })?;
            print!("{text}");
        }
        (_, Some(path)) => fs::write(path, &text).map_err(|e| CliError::Io { path: path.clone(), source: e })?,
        (_, None) => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Io { path: PathBuf::from("<stdout>"), source: e })?;
        }
    }
    Ok(!report.failed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

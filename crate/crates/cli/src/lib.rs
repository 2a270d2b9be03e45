//! The `toric` command: fan files in, text or JSON reports out.
//!
//! Exit codes: 0 when every assertion holds, 1 on an assertion failure,
//! 2 on malformed input or usage errors.

mod commands;
pub mod report;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use report::{Report, Status};
use toric_core::format::parse_fan_json;
use toric_core::{Error, Fan};

#[derive(Debug, Parser)]
#[command(name = "toric", version, about = "Smooth toric Fano classification checks")]
pub struct Cli {
    /// Emit the report as a single JSON document.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Smooth/complete/Fano flags and the wall table.
    Check { fan: PathBuf },
    /// Invariant divisors isomorphic to P^{n-1}, with normal degrees.
    Divisors { fan: PathBuf },
    /// Mori extremal walls and their contraction types.
    Mori { fan: PathBuf },
    /// Identify (X, V(ray)) with a catalog entry.
    Classify {
        fan: PathBuf,
        #[arg(long)]
        ray: usize,
    },
    /// One codimension-two blow-down along a transverse extremal wall.
    Simplify {
        fan: PathBuf,
        #[arg(long)]
        ray: usize,
    },
    /// The 2n+1 Fano fans carrying a P^{n-1} divisor.
    Catalog {
        #[arg(long)]
        dim: usize,
        /// Write each entry as a fan file into this directory.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Check every catalog entry and that the entries are pairwise distinct.
    VerifyTheorem2 {
        #[arg(long)]
        dim: usize,
    },
    /// Blow up every fixed point and check each Fano blow-up.
    VerifyTheorem1 {
        #[arg(long, conflicts_with = "corpus", required_unless_present = "corpus")]
        input: Option<PathBuf>,
        /// n,count,depth,seed
        #[arg(long, value_parser = parse_corpus_spec)]
        corpus: Option<CorpusSpec>,
    },
    /// Search for a unimodular map carrying one fan onto the other.
    Iso { a: PathBuf, b: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorpusSpec {
    pub n: usize,
    pub count: usize,
    pub depth: usize,
    pub seed: u64,
}

fn parse_corpus_spec(s: &str) -> Result<CorpusSpec, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [n, count, depth, seed] = parts.as_slice() else {
        return Err(format!("expected n,count,depth,seed, got {s:?}"));
    };
    let num = |x: &str| x.parse::<u64>().map_err(|e| format!("{x:?}: {e}"));
    Ok(CorpusSpec { n: num(n)? as usize, count: num(count)? as usize, depth: num(depth)? as usize, seed: num(seed)? })
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    FanFile { path: PathBuf, source: Error },
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    /// Whether the input itself is unusable (exit 2) rather than an
    /// expectation about it failing (exit 1).
    pub fn is_input_error(&self) -> bool {
        match self {
            CliError::Io { .. } | CliError::FanFile { .. } => true,
            CliError::Core(e) => is_input_error(e),
        }
    }
}

/// Reads, parses and validates one fan file.
pub fn parse_fan(path: &Path) -> Result<Fan, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    parse_fan_json(&text).map_err(|source| CliError::FanFile { path: path.to_path_buf(), source })
}

fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Parse(_)
            | Error::InvalidFan(_)
            | Error::RayIndex { .. }
            | Error::Dimension(_)
            | Error::OutOfRange(_)
            | Error::NotSmooth
            | Error::NotComplete
            | Error::ZeroVector
            | Error::NotPrimitive(_)
            | Error::DivisorSize { .. }
    )
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Check { .. } => "check",
            Command::Divisors { .. } => "divisors",
            Command::Mori { .. } => "mori",
            Command::Classify { .. } => "classify",
            Command::Simplify { .. } => "simplify",
            Command::Catalog { .. } => "catalog",
            Command::VerifyTheorem2 { .. } => "verify-theorem2",
            Command::VerifyTheorem1 { .. } => "verify-theorem1",
            Command::Iso { .. } => "iso",
        }
    }
}

/// Runs the command and returns its report.
pub fn execute(command: &Command) -> Report {
    let name = command.name();
    match commands::dispatch(command) {
        Ok(report) => report.finish(),
        Err(e) => {
            let status = if e.is_input_error() { Status::InvalidInput } else { Status::Fail };
            Report::failed(name, status, e.to_string())
        }
    }
}

/// Parses `argv` (program name first), runs, prints, returns the exit code.
pub fn run<I, T>(argv: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let report = execute(&cli.command);
    if cli.json {
        println!("{}", serde_json::to_string(&report).expect("reports serialize"));
    } else {
        print!("{}", report.render_text());
    }
    report.status.exit_code()
}

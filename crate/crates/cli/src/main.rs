//! `ghdist`: command-line front end for the ghdist library.
//!
//! Every command prints one JSON run report on stdout. Diagnostics, the
//! human summary and wall time go to stderr.
//!
//! Exit codes: 0 success, 1 I/O, parse or usage error, 2 invalid metric or
//! model, 3 node budget exhausted (the partial report is still printed).

mod commands;
mod input;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ghdist::gh::DEFAULT_NODE_LIMIT;
use ghdist::TOLERANCE;
use serde::Serialize;

use input::InputDigest;

#[derive(Debug, Parser, Serialize)]
#[command(
    name = "ghdist",
    version,
    about = "Gromov-Hausdorff distances between finite metric spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    options: Options,
}

#[derive(Debug, Args, Serialize)]
struct Options {
    /// Node cap for each exact search.
    #[arg(long, global = true, env = "GHDIST_BUDGET", default_value_t = DEFAULT_NODE_LIMIT)]
    budget: u64,
    /// Worker threads for the search; results do not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    #[serde(skip)]
    threads: usize,
    /// Tolerance for the metric axioms when reading inputs.
    #[arg(long, global = true, default_value_t = TOLERANCE)]
    tolerance: f64,
    /// Machine output only: suppress the human summary on stderr.
    #[arg(long, global = true)]
    #[serde(skip)]
    json: bool,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    /// Check that a file holds a valid metric space or model.
    Validate { input: String },
    /// Distance between two inputs.
    Dist {
        kind: DistKind,
        a: String,
        b: String,
        /// Report bounds without searching.
        #[arg(long)]
        bounds_only: bool,
    },
    /// Lower and upper bounds for both distances.
    Bounds { a: String, b: String },
    /// Interpolating family along an optimal correspondence.
    Geodesic {
        a: String,
        b: String,
        /// Number of equal steps in the table.
        #[arg(long, default_value_t = 4)]
        steps: usize,
        /// Also print the member at this parameter (repeatable).
        #[arg(long = "t")]
        t: Vec<f64>,
    },
    /// Build a worked example.
    Fixture {
        name: FixtureName,
        /// Size parameter (N for omega and shifted, n otherwise).
        #[arg(long, visible_alias = "N")]
        n: Option<usize>,
        /// Number of intervals in the stack.
        #[arg(long, visible_alias = "K")]
        k: Option<usize>,
        /// Sampling grid of the triode arms.
        #[arg(long)]
        grid: Option<usize>,
        /// Sampling step 2^-grid-exp of the interval stack.
        #[arg(long)]
        grid_exp: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum DistKind {
    Gh,
    Ghc,
    Hausdorff,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum FixtureName {
    Omega,
    Shifted,
    IntervalStack,
    Triode,
    Checks,
}

#[derive(Debug)]
pub enum CliError {
    Io(String),
    Parse(String),
    Usage(String),
    Invalid(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 2,
            _ => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Io(m) | CliError::Parse(m) | CliError::Usage(m) | CliError::Invalid(m) => m,
        }
    }
}

#[derive(Debug, Default, Serialize)]
pub struct Budget {
    pub node_limit: u64,
    pub nodes_explored: u64,
    pub exceeded: bool,
}

/// What a command hands back to `main`.
pub struct Outcome {
    pub inputs: Vec<InputDigest>,
    pub results: serde_json::Value,
    pub budget: Budget,
    pub summary: String,
    /// Overrides the exit code of an otherwise printed report.
    pub code: u8,
}

#[derive(Serialize)]
struct RunReport<'a> {
    command: &'a Cli,
    inputs: &'a [InputDigest],
    inputs_digest: String,
    results: &'a serde_json::Value,
    budget: &'a Budget,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let start = Instant::now();
    let outcome = match commands::run(&cli.command, &cli.options) {
        Ok(outcome) => outcome,
        Err(e) => {
            eprintln!("error: {}", e.message());
            return ExitCode::from(e.code());
        }
    };
    let joined: String = outcome.inputs.iter().map(|d| d.sha256.as_str()).collect();
    let report = RunReport {
        command: &cli,
        inputs: &outcome.inputs,
        inputs_digest: input::hex_digest(joined.as_bytes()),
        results: &outcome.results,
        budget: &outcome.budget,
    };
    let text = serde_json::to_string_pretty(&report).expect("report serializes");
    if writeln!(std::io::stdout().lock(), "{text}").is_err() {
        return ExitCode::from(1);
    }
    if !cli.options.json {
        eprintln!("{}", outcome.summary);
    }
    eprintln!("wall time: {:.3} ms", start.elapsed().as_secs_f64() * 1e3);
    ExitCode::from(outcome.code)
}

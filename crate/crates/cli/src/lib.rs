//! Batch front end for the `lcdual` checkers.
//!
//! [`check`] loads instance files, runs a suite and returns the report
//! together with the process exit code: 0 when no check failed, 1 on a
//! verification failure, 2 on an input error and 3 when an instance is
//! larger than `--max-atoms` allows.

pub mod error;
pub mod instance;
pub mod report;
pub mod suite;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use lcdual_core::Status;

pub use error::CliError;
pub use instance::{load, LoadOptions, Workspace};
pub use report::{VerificationReport, REPORT_SCHEMA};
pub use suite::Suite;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Parser, Debug)]
#[command(
    name = "lcdual",
    version,
    about = "Verify local contact algebra instances"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run a verification suite over instance files.
    Check(CheckArgs),
}

#[derive(Args, Debug, Clone)]
pub struct CheckArgs {
    pub suite: Suite,
    #[arg(required = true)]
    pub files: Vec<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest carrier accepted; instances above it exit with code 3.
    #[arg(long, default_value_t = 4)]
    pub max_atoms: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Add wall-clock timings, which makes reports non-reproducible.
    #[arg(long)]
    pub timing: bool,
}

pub struct Outcome {
    pub report: VerificationReport,
    pub rendered: String,
    pub exit_code: i32,
}

pub fn check(args: &CheckArgs) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let ws = load(
        &args.files,
        LoadOptions {
            seed: args.seed,
            max_atoms: args.max_atoms,
        },
    )?;
    let mut suites = Vec::new();
    let mut suites_ms = std::collections::BTreeMap::new();
    for s in args.suite.members() {
        let t = Instant::now();
        suites.extend(suite::run(&ws, s, args.seed));
        suites_ms.insert(s.name().to_string(), t.elapsed().as_millis() as u64);
    }
    let status = Status::combine(suites.iter().map(|s| s.status));
    let report = VerificationReport {
        schema: REPORT_SCHEMA,
        tool_version: env!("CARGO_PKG_VERSION"),
        suite: args.suite,
        seed: args.seed,
        max_atoms: args.max_atoms,
        input_digest: ws.digest(),
        status,
        suites,
        timing: args.timing.then(|| report::Timing {
            total_ms: start.elapsed().as_millis() as u64,
            suites_ms,
        }),
    };
    let rendered = match args.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    let exit_code = if status.is_fail() { 1 } else { 0 };
    Ok(Outcome {
        report,
        rendered,
        exit_code,
    })
}

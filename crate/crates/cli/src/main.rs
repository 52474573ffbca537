//! Batch experiment runner: builds a protocol and distribution by name,
//! runs the selected verification suites, and writes a deterministic JSON
//! or CSV report.
//!
//! Exit codes: 0 when every check passes, 1 on a check failure, 2 on a
//! usage or configuration error, 3 when an enumeration budget was exceeded.

mod config;
mod output;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{ExperimentConfig, FileConfig, OutputFormat, Suite};
use coordlab::model::DEFAULT_BUDGET;

#[derive(Parser)]
#[command(
    name = "coordlab",
    version,
    about = "Exact verification workbench for coordinator-model protocols"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and emit a machine-readable report.
    Run(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Optional JSON config file with the same keys as the flags below.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Protocol: naive | seq-search | and-poll | direct-sum(base=naive) |
    /// direct-sum(base=seq-search). For embeddings, --n/--k size the base.
    #[arg(long)]
    protocol: Option<String>,
    /// Input distribution: hard-onebit | hard-product.
    #[arg(long)]
    dist: Option<String>,
    /// Coordinates per player.
    #[arg(long)]
    n: Option<usize>,
    /// Number of players.
    #[arg(long)]
    k: Option<usize>,
    /// Suite: model-invariants | infotheory | costs | structure |
    /// directsum | taskalloc | all.
    #[arg(long)]
    suite: Option<String>,
    /// Cap on enumerated (input, tape) tuples per check.
    #[arg(long)]
    budget: Option<u64>,
    /// Tolerance for floating-point comparisons.
    #[arg(long)]
    tol: Option<f64>,
    /// Report file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report format: json | csv.
    #[arg(long)]
    format: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Command::Run(args) = cli.command;
    match run(args) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(args: RunArgs) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let file: FileConfig = match &args.config {
        Some(path) => serde_json::from_str(&std::fs::read_to_string(path)?)?,
        None => FileConfig::default(),
    };
    let suite_name = args
        .suite
        .or(file.suite)
        .unwrap_or_else(|| "all".to_string());
    let format_name = args
        .format
        .or(file.format)
        .unwrap_or_else(|| "json".to_string());
    let cfg = ExperimentConfig {
        protocol_name: args
            .protocol
            .or(file.protocol)
            .unwrap_or_else(|| "seq-search".to_string()),
        dist_name: args
            .dist
            .or(file.dist)
            .unwrap_or_else(|| "hard-product".to_string()),
        n: args.n.or(file.n).unwrap_or(2),
        k: args.k.or(file.k).unwrap_or(3),
        suite: Suite::parse(&suite_name)?,
        budget: args.budget.or(file.budget).unwrap_or(DEFAULT_BUDGET),
        tol: args.tol.or(file.tol).unwrap_or(1e-9),
        out: args.out.or(file.out),
        format: OutputFormat::parse(&format_name)?,
    };
    cfg.validate()?;

    let rows = suites::run_suites(&cfg);
    let rendered = output::render(&cfg, &suite_name, &rows);
    match &cfg.out {
        Some(path) => std::fs::write(path, rendered)?,
        None => print!("{rendered}"),
    }

    if rows.iter().any(|r| r.is_budget_error()) {
        Ok(ExitCode::from(3))
    } else if rows.iter().any(|r| !r.pass) {
        Ok(ExitCode::from(1))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}

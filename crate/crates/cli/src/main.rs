mod experiment;
mod scenario;
mod spec;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use crdtsync::crdts::{Value, TYPE_TAGS};
use crdtsync::metrics::{compare, parse_summary_csv};

use scenario::Scenario;
use spec::ExperimentSpec;

/// Simulate and compare CRDT synchronization protocols.
#[derive(Debug, Parser)]
#[command(name = "crdtsync", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run every cell of an experiment spec and write per-cell CSVs plus a
    /// summary. Exits 1 if any run fails to converge.
    Run {
        spec: PathBuf,
        /// Number of seeds per cell, overriding `repeat`.
        #[arg(long)]
        seeds: Option<u64>,
        /// Output directory, overriding the spec's `output`.
        #[arg(long, env = "CRDTSYNC_OUT")]
        out: Option<PathBuf>,
        /// Worker threads; defaults to one per core.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Print the irredundant join decomposition of a value.
    Decompose {
        /// Lattice type.
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(TYPE_TAGS))]
        tag: String,
        /// Canonical encoding; braces may be omitted for sets and maps.
        value: String,
    },
    /// Replay a scripted trace and check it against the golden output.
    Scenario {
        #[arg(value_enum)]
        name: Scenario,
    },
    /// Ratios of a baseline protocol against another over a summary CSV.
    Compare {
        summary: PathBuf,
        #[arg(long, default_value = "state-based")]
        baseline: String,
        #[arg(long, default_value = "delta-bp-rr")]
        other: String,
    },
}

const USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(USAGE)
        }
    }
}

/// `Err` means bad input (exit 2); other failures are reported through the
/// returned exit code.
fn dispatch(command: Command) -> Result<ExitCode> {
    match command {
        Command::Run { spec, seeds, out, jobs } => {
            let text = std::fs::read_to_string(&spec)
                .with_context(|| format!("cannot read {}", spec.display()))?;
            let mut spec = ExperimentSpec::parse(&text)?;
            if let Some(n) = seeds {
                anyhow::ensure!(n > 0, "--seeds must be positive");
                spec.repeat = n;
            }
            let out = out
                .or_else(|| spec.output.clone())
                .unwrap_or_else(|| PathBuf::from("results"));
            experiment::run(&spec, &out, jobs)
        }
        Command::Decompose { tag, value } => {
            let v = Value::parse(&tag, &value)?;
            let members: Vec<String> = v.decompose().iter().map(Value::encode).collect();
            if members.is_empty() {
                println!("(empty)");
            } else {
                println!("{}", members.join(" "));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Scenario { name } => {
            let got = name.replay()?;
            print!("{got}");
            let d = scenario::diff(name.golden(), &got);
            if d.is_empty() {
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!("trace differs from golden output:\n{d}");
                Ok(ExitCode::from(1))
            }
        }
        Command::Compare { summary, baseline, other } => {
            let file = std::fs::File::open(&summary)
                .with_context(|| format!("cannot open {}", summary.display()))?;
            let rows = parse_summary_csv(file).context("invalid summary CSV")?;
            let cmp = compare(&rows, &baseline, &other);
            anyhow::ensure!(!cmp.is_empty(), "no runs pair {baseline} with {other}");
            println!("topology,workload,nodes,seed,baseline,other,entries_ratio,total_ratio,visits_ratio");
            for c in cmp {
                println!(
                    "{},{},{},{},{},{},{:.4},{:.4},{:.4}",
                    c.topology, c.workload, c.nodes, c.seed, c.baseline, c.other,
                    c.entries_ratio, c.total_ratio, c.visits_ratio
                );
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

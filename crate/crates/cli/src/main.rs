use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod config;

use config::Args;

/// Build and analyze co-authorship networks from bibliographic JSONL.
#[derive(Parser)]
#[command(name = "coauthornet", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Corpus summary: totals, yearly activity, productivity histograms.
    Stats(Args),
    /// Rank authors by the selected centrality and prestige metrics.
    Rank(Args),
    /// Structural reports: components, degrees, small-world test, countries.
    Analyze(Args),
    /// Agglomerative clustering of the largest component.
    Cluster(Args),
    /// Cross-metric rank correlations and expert-roster overlap.
    Validate(Args),
    /// Graphviz exports of the derived networks.
    Export(Args),
}

fn run(cli: Cli) -> coauthornet::Result<()> {
    match cli.command {
        Command::Stats(a) => commands::stats(a.resolve()?),
        Command::Rank(a) => commands::rank(a.resolve()?),
        Command::Analyze(a) => commands::analyze(a.resolve()?),
        Command::Cluster(a) => commands::cluster(a.resolve()?),
        Command::Validate(a) => commands::validate(a.resolve()?),
        Command::Export(a) => commands::export(a.resolve()?),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_usage() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

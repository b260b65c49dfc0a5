//! `fintext` — deterministic pipeline from raw Chinese financial documents
//! and a knowledge graph to text-to-text pre-training data, plus benchmark
//! scoring.

mod commands;
mod config;
mod error;
mod runner;

use clap::{Parser, Subcommand};

use crate::error::CliError;

#[derive(Parser, Debug)]
#[command(
    name = "fintext",
    version,
    about = "Deterministic Chinese financial text-to-text pre-training data pipeline"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Clean raw documents with quality rules
    Filter(commands::filter::FilterArgs),
    /// Match knowledge triples to sentences mentioning both entities
    Align(commands::align::AlignArgs),
    /// Generate span-corruption examples
    Corrupt(commands::corrupt::CorruptArgs),
    /// Generate knowledge-triple-masking examples
    Ketm(commands::ketm::KetmArgs),
    /// Interleave corruption and triple-masking streams
    Mix(commands::mix::MixArgs),
    /// Score task predictions or aggregate leaderboards
    Eval(commands::eval::EvalArgs),
    /// Corpus statistics
    Stats(commands::stats::StatsArgs),
}

fn dispatch(cmd: Cmd) -> Result<(), CliError> {
    match cmd {
        Cmd::Filter(args) => commands::filter::run(args),
        Cmd::Align(args) => commands::align::run(args),
        Cmd::Corrupt(args) => commands::corrupt::run(args),
        Cmd::Ketm(args) => commands::ketm::run(args),
        Cmd::Mix(args) => commands::mix::run(args),
        Cmd::Eval(args) => commands::eval::run(args),
        Cmd::Stats(args) => commands::stats::run(args),
    }
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version print to stdout and exit 0; real parse
            // errors go to stderr and exit 1 (validation).
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.cmd) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn main() {
    std::process::exit(run());
}

mod bitfile;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bitfile::BitFormat;

/// Exit statuses.
pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_TRUNCATED: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "mlsync", version, about = "One-way file synchronization from deletions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute the synchronization message for a file.
    Encode(EncodeArgs),
    /// Rebuild the original file from a shortened copy and its message.
    Reconstruct(ReconstructArgs),
    /// Run random trials and write list-size statistics.
    Simulate(SimulateArgs),
    /// Print the contents of a message file.
    Inspect(InspectArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CodeKind {
    Rs,
    Random,
}

#[derive(Args, Debug)]
struct CodeArgs {
    /// Chunk length in bits.
    #[arg(long = "nc")]
    n_c: Option<usize>,
    /// Number of blocks.
    #[arg(long)]
    l1: Option<usize>,
    /// Chunks per block.
    #[arg(long)]
    l2: Option<usize>,
    /// Parity code.
    #[arg(long, value_enum, default_value = "rs")]
    code: CodeKind,
    /// Parity size in bits (a multiple of --nc for Reed-Solomon).
    #[arg(long)]
    z: Option<usize>,
}

#[derive(Args, Debug)]
struct LimitArgs {
    #[arg(long, default_value_t = 1_000_000)]
    max_tree_nodes: usize,
    #[arg(long, default_value_t = 100_000)]
    max_candidates: usize,
}

#[derive(Args, Debug)]
struct EncodeArgs {
    input: PathBuf,
    #[command(flatten)]
    code: CodeArgs,
    /// Seed of the random parity matrix.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "auto")]
    input_format: BitFormat,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct ReconstructArgs {
    received: PathBuf,
    message: PathBuf,
    #[command(flatten)]
    limits: LimitArgs,
    #[arg(long, value_enum, default_value = "auto")]
    input_format: BitFormat,
    /// Number of bits in a raw received file, when not a whole number of bytes.
    #[arg(long)]
    bits: Option<usize>,
    /// Format of the reconstructed files; `auto` follows the received file.
    #[arg(long, value_enum, default_value = "auto")]
    output_format: BitFormat,
    /// Output path; several candidates are written as PATH.1, PATH.2, ...
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StatsFormat {
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    /// Built-in setup number.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=7), conflicts_with_all = ["n_c", "l1", "l2", "z", "k"])]
    setup: Option<u8>,
    #[command(flatten)]
    code: CodeArgs,
    /// Deletions per trial, with explicit parameters.
    #[arg(long)]
    k: Option<usize>,
    /// Seed of the random parity matrix, with explicit parameters.
    #[arg(long, default_value_t = 0)]
    matrix_seed: u64,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    /// Master seed of the trial streams.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, value_enum, default_value = "csv")]
    format: StatsFormat,
    #[command(flatten)]
    limits: LimitArgs,
    /// Output path; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct InspectArgs {
    message: PathBuf,
}

/// An error with the exit status it maps to.
pub struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

impl Failure {
    pub fn usage(error: impl Into<anyhow::Error>) -> Self {
        Self { code: EXIT_USAGE, error: error.into() }
    }

    pub fn parse(error: impl Into<anyhow::Error>) -> Self {
        Self { code: EXIT_PARSE, error: error.into() }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    let result = match cli.command {
        Command::Encode(a) => commands::encode(a),
        Command::Reconstruct(a) => commands::reconstruct(a),
        Command::Simulate(a) => commands::simulate(a),
        Command::Inspect(a) => commands::inspect(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}

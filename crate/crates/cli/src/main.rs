mod commands;
mod report;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

/// Seed used by randomized subcommands unless `--seed` is given.
pub const DEFAULT_SEED: u64 = 0x5eed_2016;

#[derive(Parser, Debug)]
#[command(name = "moncodes", version, about = "Decreasing monomial codes: construction, analysis and verification")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a polar code by ranking bit channels by Bhattacharyya parameter.
    Construct(ConstructArgs),
    /// Report dimension, distance, minimum-weight count and duality data.
    Analyze(CodeArgs),
    /// Write the dual of a decreasing code.
    Dual(CodeArgs),
    /// Print a generator matrix, one row per line.
    Genmatrix(GenmatrixArgs),
    /// Orbit of a monomial under the lower triangular affine group.
    Orbit(OrbitArgs),
    /// Smallest decreasing set containing the given monomials.
    Closure(ClosureArgs),
    /// Rank all bit channels of a channel.
    Rank(RankArgs),
    /// Monte-Carlo estimate of the Bhattacharyya parameter of a bit channel.
    Simulate(SimulateArgs),
    /// Compare every closed-form result against its brute-force counterpart.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[arg(long)]
    pub channel: String,
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct CodeArgs {
    /// Code description file.
    pub code: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct GenmatrixArgs {
    /// Code description file; omit to print the full Kronecker matrix.
    pub code: Option<PathBuf>,
    #[arg(long, required_unless_present = "code", conflicts_with = "code")]
    pub m: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct OrbitArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub monomial: String,
    /// List every polynomial in the orbit.
    #[arg(long)]
    pub list: bool,
}

#[derive(Args, Debug)]
pub struct ClosureArgs {
    /// Code description file whose monomials are closed.
    pub code: Option<PathBuf>,
    #[arg(long, required_unless_present = "code", conflicts_with = "code")]
    pub m: Option<usize>,
    /// Monomials to close; repeat the flag or separate with commas.
    #[arg(long, value_delimiter = ',')]
    pub monomial: Vec<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct RankArgs {
    #[arg(long)]
    pub channel: String,
    #[arg(long)]
    pub m: usize,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[arg(long)]
    pub channel: String,
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub monomial: String,
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Code description file.
    pub code: PathBuf,
    /// Channel the code was built for; defaults to the file's `meta.channel`.
    #[arg(long)]
    pub channel: Option<String>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Construct(a) => commands::construct(a),
        Command::Analyze(a) => commands::analyze(a),
        Command::Dual(a) => commands::dual(a),
        Command::Genmatrix(a) => commands::genmatrix(a),
        Command::Orbit(a) => commands::orbit(a),
        Command::Closure(a) => commands::closure(a),
        Command::Rank(a) => commands::rank(a),
        Command::Simulate(a) => commands::simulate(a),
        Command::Verify(a) => verify::verify(a),
    };
    match result {
        Ok(outcome) => {
            if let Some(report) = &outcome.report {
                report.print(cli.json);
            }
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.exit_code())
        }
    }
}

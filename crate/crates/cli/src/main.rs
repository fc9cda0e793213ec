//! `invquant`: JSON reports for the quantization toolkit.
//!
//! Exit status: 0 on success, 1 when a verification fails, 2 on bad input.

mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "invquant", version, about = "Invariant quantization of linear fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Gram matrix and inertia of every Fock level up to --levels.
    Quantize(QuantizeArgs),
    /// Constrained photon states of one field oscillator.
    Gb(GbArgs),
    /// Little group of a light-like vector.
    #[command(subcommand)]
    LittleGroup(LittleGroupCommand),
    /// Classical mode calculator on a JSON mode document.
    Classical(ClassicalArgs),
    /// Symplectic form of L = a φ̇²/2 + b φ φ̇ - c φ²/2 and its divergence invariance.
    Lagrangian1d(LagrangianArgs),
    /// Equivalence constant of two Hilbert-type scalar products.
    Equiv(EquivArgs),
}

#[derive(Clone, Copy, ValueEnum)]
pub enum SystemArg {
    Oscillator,
    Scalar,
    Em,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum ModesArg {
    /// A single mode (at rest for the scalar, along z for the potential).
    Oscillator,
    /// Six light-like momenta along ±x, ±y, ±z.
    Demo,
}

#[derive(Args)]
pub struct QuantizeArgs {
    #[arg(long, value_enum)]
    pub system: SystemArg,
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub variant: u8,
    #[arg(long)]
    pub levels: usize,
    #[arg(long, value_enum, default_value = "oscillator")]
    pub modes: ModesArg,
    /// Oscillator frequency / scalar mass.
    #[arg(long, default_value = "1")]
    pub mass: String,
}

#[derive(Args)]
pub struct GbArgs {
    #[arg(long)]
    pub n: usize,
    /// Light-like momentum as "k0,k1,k2,k3".
    #[arg(long, default_value = "1,0,0,1", allow_hyphen_values = true)]
    pub k: String,
}

#[derive(Subcommand)]
pub enum LittleGroupCommand {
    /// Matrix of one E(2) element and its round trip.
    Element(ElementArgs),
    /// Seeded witnesses: round trips, homomorphism, invariant subspaces, orbits.
    Verify(VerifyArgs),
}

#[derive(Args)]
pub struct ElementArgs {
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub phi: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub alpha: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub beta: String,
    #[arg(long, default_value = "1,0,0,1", allow_hyphen_values = true)]
    pub k: String,
    /// Exact rational construction for k = (κ,0,0,κ); needs --cos and --sin.
    #[arg(long)]
    pub exact: bool,
    #[arg(long, allow_hyphen_values = true)]
    pub cos: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub sin: Option<String>,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "1,0,0,1", allow_hyphen_values = true)]
    pub k: String,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum ClassicalOp {
    Energy,
    Radiate,
    Bracket,
    Generator,
}

#[derive(Args)]
pub struct ClassicalArgs {
    #[arg(value_enum)]
    pub op: ClassicalOp,
    #[arg(long)]
    pub input: std::path::PathBuf,
}

#[derive(Args)]
pub struct LagrangianArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub b: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub c: String,
    /// Divergence shift b → b + λ.
    #[arg(long, default_value = "5", allow_hyphen_values = true)]
    pub lambda: String,
    /// First phase point "φ,φ̇".
    #[arg(long, default_value = "1,0", allow_hyphen_values = true)]
    pub first: String,
    /// Second phase point "φ,φ̇".
    #[arg(long, default_value = "0,1", allow_hyphen_values = true)]
    pub second: String,
}

#[derive(Args)]
pub struct EquivArgs {
    #[arg(long)]
    pub m1: std::path::PathBuf,
    #[arg(long)]
    pub m2: std::path::PathBuf,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Quantize(a) => commands::quantize(a),
        Command::Gb(a) => commands::gb(a),
        Command::LittleGroup(LittleGroupCommand::Element(a)) => commands::element(a),
        Command::LittleGroup(LittleGroupCommand::Verify(a)) => commands::verify(a),
        Command::Classical(a) => commands::classical(a),
        Command::Lagrangian1d(a) => commands::lagrangian(a),
        Command::Equiv(a) => commands::equiv(a),
    };
    match result {
        Ok(outcome) => {
            let text = serde_json::to_string_pretty(&outcome.report).expect("reports serialize");
            // a closed pipe downstream is not an error of ours
            let _ = writeln!(std::io::stdout(), "{text}");
            if outcome.verified {
                ExitCode::SUCCESS
            } else {
                eprintln!("invquant: verification failed");
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("invquant: {e:#}");
            ExitCode::from(2)
        }
    }
}

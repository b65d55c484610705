//! `czcrit`: batch front end. Every command prints one JSON document (or JSON
//! lines) on stdout; diagnostics go to stderr.

mod commands;
mod input;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub const SCHEMA: &str = "cz-criterion/1";

#[derive(Parser, Debug)]
#[command(name = "czcrit", version, about = "Decide maximal control of even polynomial singular integrals")]
struct Cli {
    /// Emit JSON (the default).
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Emit the CSV table instead of JSON, for probes that produce one.
    #[arg(long, global = true)]
    csv: bool,
    #[command(subcommand)]
    command: Command,
}

/// Kernel input: the numerator `Ω·|x|^(2N)` or an explicit harmonic expansion.
#[derive(Args, Debug, Clone, Default)]
pub struct KernelInput {
    /// Polynomial JSON, inline or `@path`.
    #[arg(long)]
    numerator: Option<String>,
    /// Harmonic-expansion JSON, inline or `@path`.
    #[arg(long)]
    expansion: Option<String>,
    /// Expected ambient dimension; rejected on mismatch.
    #[arg(long)]
    dim: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Split a numerator into spherical-harmonic components.
    Decompose {
        #[command(flatten)]
        input: KernelInput,
    },
    /// Decide whether the operator is controlled.
    Check {
        #[command(flatten)]
        input: KernelInput,
        /// Subdivision cells allowed for n >= 3.
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
        /// Seed for the random witness directions (n >= 3).
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
    /// `γ_j` for dimension `n`, or the ratio `γ_j / γ_j0`.
    Gamma {
        #[arg(long)]
        dim: u32,
        #[arg(long)]
        j: u32,
        #[arg(long)]
        j0: Option<u32>,
    },
    /// Table of exact constants for one `(n, N)`.
    Constants {
        #[arg(long)]
        dim: u32,
        #[arg(long)]
        order: u32,
    },
    /// Exact sweep of the combinatorial identities, as JSON lines.
    Identities {
        #[arg(long, value_enum, default_value_t = Sweep::Default)]
        sweep: Sweep,
        /// Restrict to these identities (repeatable).
        #[arg(long = "only")]
        only: Vec<String>,
        /// Print every report, not just failures and the summary.
        #[arg(long)]
        all: bool,
    },
    /// Floating-point experiments in the plane.
    Probe {
        #[command(subcommand)]
        probe: ProbeCommand,
    },
    /// The harmonic family `xy·Q_2j` in three variables.
    Example5 {
        /// Largest index generated.
        #[arg(long, default_value_t = 3)]
        j: u32,
        /// Weights `ε_0, ε_1, …`; when given, the weighted kernel is checked.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        eps: Vec<String>,
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Sweep {
    Default,
}

#[derive(Subcommand, Debug)]
pub enum ProbeCommand {
    /// Averaged kernel against `K(x)` at exterior points.
    Reconstruct {
        #[command(flatten)]
        input: KernelInput,
        /// `x,y` with `|(x, y)| >= 1.1` (repeatable). Random if omitted.
        #[arg(long = "point", allow_hyphen_values = true)]
        points: Vec<String>,
        /// How many random points to draw when none are given.
        #[arg(long, default_value_t = 5)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Relative error allowed.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// `|Ŝχ_B(rξ)| / |Q(ξ)|` over directions and radii.
    Scan {
        #[command(flatten)]
        input: KernelInput,
        /// Allowed drift when the direction set doubles.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        directions: Option<usize>,
    },
    /// Zeros of `Q` on the circle against the components.
    Zeros {
        #[command(flatten)]
        input: KernelInput,
    },
    /// `T*f / M(Tf)` on a grid and its refinement.
    Pointwise {
        #[command(flatten)]
        input: KernelInput,
        #[arg(long, default_value = "gaussian")]
        function: String,
        #[arg(long, default_value_t = 41)]
        points: usize,
        #[arg(long, default_value_t = 2.0)]
        half_width: f64,
        #[arg(long, value_delimiter = ',', default_value = "0.1,0.2,0.4,0.8")]
        eps: Vec<f64>,
        /// Allowed drift under refinement.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// `sup |b_N|` on the unit ball for a range of orders.
    Growth {
        #[arg(long, default_value_t = 2)]
        dim: u32,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3,4,5,6,7,8")]
        orders: Vec<u32>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Decompose { input } => commands::decompose(&input),
        Command::Check { input, budget, seed } => commands::check(&input, budget, seed),
        Command::Gamma { dim, j, j0 } => commands::gamma(dim, j, j0),
        Command::Constants { dim, order } => commands::constants(dim, order),
        Command::Identities { sweep: Sweep::Default, only, all } => commands::identities(&only, all),
        Command::Probe { probe } => commands::probe(probe, cli.csv),
        Command::Example5 { j, eps, budget } => commands::example5(j, &eps, budget),
    };
    match result {
        Ok(out) => {
            // a closed pipe downstream is not our failure
            let _ = std::io::stdout().lock().write_all(out.text.as_bytes());
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("czcrit: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

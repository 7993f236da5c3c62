//! `seopt` — compute interference-minimizing spectral efficiencies, emit the
//! associated curves, and validate the Poisson-field collision model against
//! Monte Carlo.
//!
//! Exit codes: 0 success, 2 input or domain error, 3 validation disagreement.

mod commands;
mod config;
mod emit;
mod grid;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use emit::{CurveKind, FileFormat};

#[derive(Parser)]
#[command(name = "seopt", version, about = "Spectral-efficiency optimization for hidden-node-quiet transmission")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Optimal SISO spectral efficiency for a channel exponent.
    SisoCopt(ScalarArgs),
    /// Optimal per-antenna MIMO spectral efficiency for a channel exponent.
    MimoBetaopt(ScalarArgs),
    /// Evaluate a named curve over a grid and write it as CSV or JSON.
    Curve(CurveArgs),
    /// Monte-Carlo check of the analytic Poisson-field collision probability.
    Validate(ValidateArgs),
    /// Largest average rate served by duty-cycling the fixed-message optimum.
    MaxRate(MaxRateArgs),
}

/// Output format for scalar reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Args)]
struct ScalarArgs {
    /// Path-loss exponent of the transmitter-to-hidden-node channel.
    #[arg(long)]
    alpha: f64,
    /// Use the cubic polynomial approximation instead of the exact optimum.
    #[arg(long)]
    poly: bool,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    format: ReportFormat,
}

#[derive(Args)]
struct FieldArgs {
    /// Hidden-node density (nodes per unit area).
    #[arg(long)]
    rho: Option<f64>,
    /// Per-node packet arrival rate (packets per unit time).
    #[arg(long)]
    lambda: Option<f64>,
    /// Link distance of the transmission of interest.
    #[arg(long)]
    r_link: Option<f64>,
    /// Linear INR disruption threshold.
    #[arg(long, conflicts_with = "eta_i_db")]
    eta_i: Option<f64>,
    /// INR disruption threshold in dB.
    #[arg(long, allow_negative_numbers = true)]
    eta_i_db: Option<f64>,
    /// Noise variance (linear power units).
    #[arg(long)]
    sigma2: Option<f64>,
    /// Message size in bits.
    #[arg(long)]
    n_info: Option<f64>,
    /// Path-loss exponent.
    #[arg(long)]
    alpha: Option<f64>,
    /// Implementation loss in dB (0 dB = Shannon capacity).
    #[arg(long)]
    loss_db: Option<f64>,
}

#[derive(Args)]
struct CurveArgs {
    /// Which curve to evaluate.
    #[arg(long, value_enum)]
    kind: CurveKind,
    /// Grid as lo:hi:step (inclusive); alpha grid for the *-copt kinds,
    /// spectral-efficiency grid otherwise.
    #[arg(long)]
    grid: Option<String>,
    #[command(flatten)]
    field: FieldArgs,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FileFormat::Csv)]
    format: FileFormat,
    /// JSON run configuration; explicit flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct ValidateArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Spectral efficiency to validate at; defaults to the SISO optimum for
    /// the effective alpha.
    #[arg(long, short = 'c')]
    spectral_efficiency: Option<f64>,
    /// Monte-Carlo trials.
    #[arg(long)]
    trials: Option<u64>,
    /// RNG seed; reruns with the same seed are byte-identical.
    #[arg(long)]
    seed: Option<u64>,
    /// Arrival window length; defaults to the transmission duration.
    #[arg(long)]
    window_t: Option<f64>,
    /// Simulated disc radius; defaults to 3x the interference radius.
    #[arg(long)]
    region_radius: Option<f64>,
    /// Also write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    format: ReportFormat,
    /// JSON run configuration; explicit flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Test hook: scale the analytic probability before the verdict.
    #[arg(long, hide = true, default_value_t = 1.0)]
    analytic_bias: f64,
}

#[derive(Args)]
struct MaxRateArgs {
    /// Path-loss exponent.
    #[arg(long)]
    alpha: f64,
    /// Allocated bandwidth in Hz.
    #[arg(long)]
    bandwidth: f64,
    /// Antenna count; selects the MIMO form and requires --duty.
    #[arg(long, requires = "duty")]
    n_antennas: Option<u32>,
    /// Duty cycle in (0, 1] for the MIMO form.
    #[arg(long, requires = "n_antennas")]
    duty: Option<f64>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    format: ReportFormat,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::SisoCopt(args) => commands::siso_copt(args),
        Command::MimoBetaopt(args) => commands::mimo_betaopt(args),
        Command::Curve(args) => commands::curve(args),
        Command::Validate(args) => commands::validate(args),
        Command::MaxRate(args) => commands::max_rate(args),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

//! Command-line front end for censored-data evidence: trial CSV ingestion,
//! CDF and vaccine-efficacy assertions, censoring sensitivity sweeps, CDF
//! envelopes and synthetic trial generation.

pub mod error;
pub mod report;
pub mod simulate;
pub mod table;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dssurv_core::{Direction, DEFAULT_DRAWS};
use serde::Serialize;

pub use error::CliError;
pub use report::{cmd_assert_cdf, cmd_assert_ve, cmd_envelope, cmd_simulate, cmd_sweep};
pub use simulate::{simulate_trial, ArmSpec, Hazard};
pub use table::{parse_trial_csv, parse_trial_str, TrialRow, TrialTable};

pub const DEFAULT_SEED: u64 = 1;

#[derive(Debug, Parser)]
#[command(name = "dssurv", version, about = "Evidence triples for right-censored survival data")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evidence that the fraction failing in (tl, tu] lies in [ql, qu].
    AssertCdf(CdfArgs),
    /// Monte Carlo evidence for a vaccine-efficacy claim on (tl, tu].
    AssertVe(VeArgs),
    /// The VE assertion at several censoring caps under one seed.
    Sweep(SweepArgs),
    /// Pointwise CDF envelope, optionally with Kaplan-Meier.
    Envelope(EnvelopeArgs),
    /// Write a synthetic trial CSV.
    Simulate(SimulateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// VE > theta
    Gt,
    /// VE < theta
    Lt,
}

impl From<Side> for Direction {
    fn from(s: Side) -> Self {
        match s {
            Side::Gt => Direction::GreaterThan,
            Side::Lt => Direction::LessThan,
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct McArgs {
    #[arg(long, default_value_t = DEFAULT_DRAWS)]
    pub draws: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Worker threads (results do not depend on it).
    #[arg(long)]
    #[serde(skip)]
    pub workers: Option<usize>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CdfArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Restrict to one arm label.
    #[arg(long)]
    pub arm: Option<String>,
    #[arg(long)]
    pub tl: f64,
    #[arg(long)]
    pub tu: f64,
    #[arg(long, default_value_t = 0.0)]
    pub ql: f64,
    #[arg(long, default_value_t = 1.0)]
    pub qu: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub mc: McArgs,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct TwoArmArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub arm_vaccine: String,
    #[arg(long)]
    pub arm_placebo: String,
    #[arg(long)]
    pub tl: f64,
    #[arg(long)]
    pub tu: f64,
    #[arg(long)]
    pub theta: f64,
    #[arg(long, value_enum, default_value_t = Side::Gt)]
    pub direction: Side,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct VeArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub trial: TwoArmArgs,
    /// Fraction of censored subjects allowed to count as failures.
    #[arg(long, default_value_t = 1.0)]
    pub phi: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub mc: McArgs,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SweepArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub trial: TwoArmArgs,
    /// Repeatable, or comma separated.
    #[arg(long = "phi", value_delimiter = ',', default_values_t = [0.0, 0.25, 0.5, 0.75, 1.0])]
    pub phis: Vec<f64>,
    #[command(flatten)]
    #[serde(flatten)]
    pub mc: McArgs,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct EnvelopeArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub arm: Option<String>,
    /// `t1,t2,...` or `start:stop:step`; defaults to the observed times.
    #[arg(long)]
    pub grid: Option<String>,
    #[arg(long, default_value_t = dssurv_core::inference::DEFAULT_LEVEL)]
    pub level: f64,
    /// Append the Kaplan-Meier CDF estimate.
    #[arg(long)]
    pub km: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SimulateArgs {
    /// Subjects per arm.
    #[arg(long)]
    pub m: usize,
    /// Hazard rate per piece; repeat together with --break for piecewise hazards.
    #[arg(long = "rate", required = true, value_delimiter = ',')]
    pub rates: Vec<f64>,
    #[arg(long = "break", value_delimiter = ',')]
    pub breaks: Vec<f64>,
    #[arg(long, default_value_t = 0.0)]
    pub censor_rate: f64,
    #[arg(long)]
    pub end_time: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Label for a second, vaccine arm whose hazard is scaled by --hazard-ratio.
    #[arg(long, requires = "arm_placebo")]
    pub arm_vaccine: Option<String>,
    #[arg(long, requires = "arm_vaccine")]
    pub arm_placebo: Option<String>,
    #[arg(long, default_value_t = 1.0)]
    pub hazard_ratio: f64,
    /// Write here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Runs one command and returns what belongs on standard output.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::AssertCdf(a) => cmd_assert_cdf(a),
        Command::AssertVe(a) => cmd_assert_ve(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Envelope(a) => cmd_envelope(a),
        Command::Simulate(a) => cmd_simulate(a),
    }
}

/// Parses `argv` and runs it; the error carries the process exit code.
pub fn run_args<I, S>(argv: I) -> Result<String, CliError>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| CliError::Config(e.to_string()))?;
    run(&cli)
}

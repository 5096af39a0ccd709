//! Command-line surface: subcommands and shared flags.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

#[derive(Parser, Debug)]
#[command(
    name = "horizon",
    version,
    about = "Cloning fidelities of a quantum black hole: closed forms, brute-force checks, sweeps",
    propagate_version = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// One N -> M fidelity query at a single parameter point.
    Fidelity(PointArgs),
    /// Grid sweep driven by a JSON config file.
    Sweep(SweepArgs),
    /// Preset curve: F vs M at omega/T = 4 for several Gamma0 (N = 1).
    Figure2(PresetArgs),
    /// Preset curve: F vs M at Gamma0 = 0.95 for several omega/T (N = 1).
    Figure3(PresetArgs),
    /// Occupation distributions p(m|1) and p(m|0), analytic vs simulated.
    State(StateArgs),
    /// Self-check suite; exits 1 if any check fails.
    Validate(ValidateArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodArg {
    /// Closed forms only.
    Analytic,
    /// Truncated-Fock brute force only.
    Simulate,
    /// Both, for cross-checking.
    Both,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScenarioArg {
    /// Freshly formed horizon: pure two-mode squeezing, input outside.
    Early,
    /// Late-time horizon: squeezing plus grey-body scattering, input on the
    /// incoming signal mode.
    Late,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Args, Debug)]
pub struct PointArgs {
    /// Quantum absorption probability (late scenario only), in [0, 1].
    #[arg(long)]
    pub gamma0: Option<f64>,
    /// Mode frequency over Hawking temperature, > 0.
    #[arg(long = "omega-over-t")]
    pub omega_over_t: f64,
    /// Number of input quanta.
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    /// Post-selected number of region-I quanta.
    #[arg(long)]
    pub m: usize,
    #[arg(long, value_enum, default_value_t = MethodArg::Analytic)]
    pub method: MethodArg,
    #[arg(long, value_enum, default_value_t = ScenarioArg::Late)]
    pub scenario: ScenarioArg,
    /// Truncation-tail target for simulations.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Per-mode cutoff ceiling for simulations.
    #[arg(long = "nmax", default_value_t = 40)]
    pub nmax: usize,
    /// Write the row(s) here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// JSON config file (one object, unknown keys rejected).
    #[arg(long)]
    pub config: PathBuf,
    /// Worker threads (default: machine parallelism).
    #[arg(long)]
    pub threads: Option<usize>,
    /// Overrides the config's output path.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct PresetArgs {
    #[arg(long, value_enum, default_value_t = MethodArg::Analytic)]
    pub method: MethodArg,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long = "nmax", default_value_t = 40)]
    pub nmax: usize,
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,
}

#[derive(Args, Debug)]
pub struct StateArgs {
    /// Quantum absorption probability, in [0, 1].
    #[arg(long)]
    pub gamma0: f64,
    #[arg(long = "omega-over-t")]
    pub omega_over_t: f64,
    /// Largest occupation number printed.
    #[arg(long = "m-max", default_value_t = 10)]
    pub m_max: usize,
    #[arg(long, value_enum, default_value_t = MethodArg::Both)]
    pub method: MethodArg,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long = "nmax", default_value_t = 40)]
    pub nmax: usize,
}

#[derive(Args, Debug)]
pub struct ValidateArgs {
    /// Restrict to M <= 4 and cutoff <= 10 so the suite finishes fast.
    #[arg(long)]
    pub quick: bool,
    /// Truncation-tail target for the simulated checks; when a cutoff under
    /// the ceiling cannot reach it, those checks report tail-limited status
    /// instead of failing.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
}

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use farmeff_core::report::Format;

#[derive(Debug, Parser)]
#[command(name = "farmeff", version, about = "Two-stage farm efficiency benchmarking")]
pub struct Cli {
    /// TOML file with defaults for any of the options below.
    #[arg(long, global = true, env = "FARMEFF_CONFIG")]
    pub config: Option<PathBuf>,

    /// Print progress to stderr.
    #[arg(short, long, global = true, env = "FARMEFF_VERBOSE")]
    pub verbose: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a dataset and print its summary statistics.
    Validate(ValidateArgs),
    /// Score every farm and write the first-stage tables.
    Dea(DeaArgs),
    /// Fit the second-stage regressions.
    Regress(RegressArgs),
    /// Rebuild the first-stage tables from saved results.
    Report(ReportArgs),
    /// Write a synthetic dataset.
    Synth(SynthArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RtsArg {
    Crs,
    Vrs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ThetaArg {
    Ccr,
    Bcc,
}

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// Farm data CSV.
    #[arg(long, env = "FARMEFF_INPUT")]
    pub input: Option<PathBuf>,

    /// Skip rows with an empty mapped field instead of failing.
    #[arg(long, env = "FARMEFF_DROP_INCOMPLETE")]
    pub drop_incomplete: bool,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output directory.
    #[arg(long, env = "FARMEFF_OUT")]
    pub out: Option<PathBuf>,

    /// Table formats, comma separated: markdown, csv, json.
    #[arg(long, value_delimiter = ',', env = "FARMEFF_FORMAT")]
    pub format: Vec<Format>,
}

#[derive(Debug, Clone, Args)]
pub struct DeaOptions {
    /// Worker threads for the per-farm programs.
    #[arg(long, env = "FARMEFF_JOBS")]
    pub jobs: Option<usize>,

    /// Tolerance for efficiency and slack tests.
    #[arg(long, env = "FARMEFF_TOL_EFF")]
    pub tol_eff: Option<f64>,

    /// Tolerance for the returns-to-scale interval test.
    #[arg(long, env = "FARMEFF_TOL_RTS")]
    pub tol_rts: Option<f64>,

    /// Technology for slacks, peers and projections.
    #[arg(long, value_enum, env = "FARMEFF_RTS")]
    pub rts: Option<RtsArg>,
}

#[derive(Debug, Clone, Args)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct DeaArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    #[command(flatten)]
    pub dea: DeaOptions,

    /// Also write every farm's CCR and BCC programs to this directory.
    #[arg(long, env = "FARMEFF_DUMP_LP")]
    pub dump_lp: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct RegressArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    #[command(flatten)]
    pub dea: DeaOptions,

    /// Results JSON from `dea`; scores are computed here when omitted.
    #[arg(long, env = "FARMEFF_DEA_RESULTS")]
    pub dea_results: Option<PathBuf>,

    /// Which score enters the second stage.
    #[arg(long, value_enum, env = "FARMEFF_THETA_SOURCE")]
    pub theta_source: Option<ThetaArg>,

    /// Contextual variables to include, comma separated (default: all).
    #[arg(long, value_delimiter = ',', env = "FARMEFF_VARIABLES")]
    pub variables: Vec<String>,
}

#[derive(Debug, Clone, Args)]
pub struct ReportArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    #[command(flatten)]
    pub dea: DeaOptions,

    /// Results JSON from `dea`; scores are computed here when omitted.
    #[arg(long, env = "FARMEFF_DEA_RESULTS")]
    pub dea_results: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SynthArgs {
    /// Number of farms.
    #[arg(long, env = "FARMEFF_FARMS")]
    pub farms: Option<usize>,

    #[arg(long, env = "FARMEFF_SEED")]
    pub seed: Option<u64>,

    /// Output CSV file; stdout when omitted.
    #[arg(long, env = "FARMEFF_OUT")]
    pub out: Option<PathBuf>,
}

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "fitmetrics",
    version,
    about = "Regression and classification performance metrics"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Regression error metrics over actual/predicted columns
    Regress(RegressArgs),
    /// Threshold classification metrics over label/score columns
    Classify(ClassifyArgs),
    /// ROC or precision-recall summaries, lift and calibration error
    Curves(CurvesArgs),
    /// Multi-criteria model validation checks
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Exit with status 3 if any requested metric is undefined
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Args)]
pub struct RegressArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub actual_col: String,
    #[arg(long)]
    pub predicted_col: String,
    /// Row order is a meaningful sequence order (enables MASE)
    #[arg(long)]
    pub ordered: bool,
    /// Comma-separated metric ids, or "all"
    #[arg(long, default_value = "all")]
    pub metrics: String,
    /// Recompute per-term metrics over the defined terms only
    #[arg(long)]
    pub skip_undefined_terms: bool,
    /// Discard rows with unparseable or non-finite numbers instead of failing
    #[arg(long)]
    pub drop_bad_rows: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ScoredInputArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub label_col: String,
    #[arg(long)]
    pub score_col: String,
    /// Label value of the positive (minority) class
    #[arg(long)]
    pub positive: String,
    #[arg(long)]
    pub drop_bad_rows: bool,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub data: ScoredInputArgs,
    /// Scores >= threshold are predicted positive
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    pub threshold: f64,
    #[arg(long, default_value = "all")]
    pub metrics: String,
    /// Minority-class weight for ACA, in (0, 1)
    #[arg(long, default_value_t = 0.5)]
    pub aca_weight: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CurveKind {
    Roc,
    Pr,
}

#[derive(Debug, Args)]
pub struct CurvesArgs {
    #[arg(long, value_enum)]
    pub kind: CurveKind,
    #[command(flatten)]
    pub data: ScoredInputArgs,
    /// Write curve points as CSV (threshold,x,y)
    #[arg(long)]
    pub emit_points: Option<PathBuf>,
    /// Also report lift for the top fraction of the dataset
    #[arg(long)]
    pub lift_fraction: Option<f64>,
    /// Also report the sliding-window calibration error (needs >= 100 rows)
    #[arg(long)]
    pub cal: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Tropsha,
    Rm,
    Adequacy,
    Objective,
    Ri,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[arg(long, value_enum)]
    pub check: Check,
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, default_value = "actual")]
    pub actual_col: String,
    #[arg(long, default_value = "predicted")]
    pub predicted_col: String,
    #[arg(long)]
    pub observations: Option<u64>,
    #[arg(long)]
    pub parameters: Option<u64>,
    #[arg(long)]
    pub train: Option<PathBuf>,
    #[arg(long)]
    pub validation: Option<PathBuf>,
    /// Candidate model as NAME=PATH; repeat for each model
    #[arg(long = "model")]
    pub models: Vec<String>,
    #[arg(long, default_value_t = 0.85)]
    pub slope_low: f64,
    #[arg(long, default_value_t = 1.15)]
    pub slope_high: f64,
    #[arg(long, default_value_t = 0.1)]
    pub index_max: f64,
    #[arg(long, default_value_t = 0.5)]
    pub rm_min: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

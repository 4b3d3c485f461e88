//! Command-line front end for `circuitkit-core`: argument parsing, file
//! formats and one handler per verb.

pub mod format;
mod verbs;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

pub use verbs::execute;

/// Column cap applied when `CIRCUITKIT_MAX_COLS` is unset.
pub const DEFAULT_MAX_COLS: usize = 12;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("output error: {0}")]
    Output(String),
    #[error(transparent)]
    Core(#[from] circuitkit_core::Error),
}

impl CliError {
    /// 1 for mathematical findings surfaced as errors, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        use circuitkit_core::Error as E;
        match self {
            CliError::Core(E::AuditFailure { .. } | E::CrossCheck(_) | E::EmptyLargeSet) => 1,
            _ => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "circuitkit", version, about = "Circuit imbalance measures, augmentation and proximity checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Imbalances, pairwise ratios and κ* of a subspace.
    Analyze(InputArgs),
    /// Circuit augmentation on an LP instance.
    Solve(SolveArgs),
    /// Proximity checks.
    Prox(ProxArgs),
    /// Exact feasibility from an approximate oracle.
    Blackbox(BlackboxArgs),
    /// Graver basis, sandwich check and optional IP proximity.
    Graver(InputArgs),
    /// Conformal decompositions with 1/κ̇-integral terms.
    Conjecture(ConjectureArgs),
    /// Reproduce the κ̇ = 5850 non-representability example.
    Appendix,
    /// Emit a seeded fixture instance.
    Generate(GenerateArgs),
    /// Vertex-edge graph diameter of a polyhedron.
    Diameter(InputArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Input file (JSON, or CSV for a bare matrix).
    #[arg(value_name = "FILE", conflicts_with = "input")]
    pub file: Option<PathBuf>,
    #[arg(long)]
    pub input: Option<PathBuf>,
}

impl InputArgs {
    pub fn path(&self) -> Result<&Path, CliError> {
        self.input.as_deref().or(self.file.as_deref()).ok_or_else(|| CliError::Input("an input file is required".into()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RuleArg {
    Steepest,
    Dantzig,
    Deepest,
    Ratio,
    Support,
    Guided,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value_t = RuleArg::Steepest)]
    pub rule: RuleArg,
    /// Iteration cap; defaults to a multiple of the analysed bound.
    #[arg(long)]
    pub cap: Option<usize>,
    /// Also write the full step trace here.
    #[arg(long)]
    pub trace: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProxCheck {
    Feasibility,
    Optimal,
    Transfer,
    Fixing,
}

#[derive(Debug, Args)]
pub struct ProxArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum)]
    pub check: ProxCheck,
}

#[derive(Debug, Args)]
pub struct BlackboxArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Oracle accuracy `p/q`; defaults to 1/(κ̄ + n)³.
    #[arg(long)]
    pub epsilon: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct ConjectureArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Integer kernel vector to decompose; without it every Graver element is tried.
    #[arg(long)]
    pub target: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Flow,
    Incidence,
    Dumbbell,
    TuNetwork,
    RandomRational,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 6)]
    pub nodes: usize,
    #[arg(long, default_value_t = 10)]
    pub arcs: usize,
    #[arg(long, default_value_t = 3)]
    pub rows: usize,
    #[arg(long, default_value_t = 5)]
    pub cols: usize,
    #[arg(long, default_value_t = 5)]
    pub max_abs: i64,
    #[arg(long, default_value_t = 3)]
    pub max_den: i64,
}

/// What a verb produced: the JSON report, an optional CSV rendering, and
/// whether it amounts to a finding (exit code 1).
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub report: Value,
    pub csv: Option<String>,
    pub finding: bool,
}

/// Column cap from `CIRCUITKIT_MAX_COLS`.
pub fn max_cols() -> Result<usize, CliError> {
    match std::env::var("CIRCUITKIT_MAX_COLS") {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Input(format!("CIRCUITKIT_MAX_COLS={v:?} is not a count"))),
        Err(_) => Ok(DEFAULT_MAX_COLS),
    }
}

/// Serializes an outcome in the requested format.
pub fn render(outcome: &Outcome, fmt: OutputFormat) -> Result<String, CliError> {
    match fmt {
        OutputFormat::Json => {
            serde_json::to_string_pretty(&outcome.report).map(|s| s + "\n").map_err(|e| CliError::Output(e.to_string()))
        }
        OutputFormat::Csv => outcome.csv.clone().ok_or_else(|| CliError::Input("this verb has no CSV output".into())),
    }
}

/// Parses, executes and writes; returns the process exit code.
pub fn main_with(cli: Cli) -> i32 {
    let result = execute(&cli.command).and_then(|outcome| {
        let text = render(&outcome, cli.format)?;
        match &cli.output {
            Some(path) => std::fs::write(path, text).map_err(|e| CliError::Output(format!("{}: {e}", path.display())))?,
            None => print!("{text}"),
        }
        Ok(outcome.finding)
    });
    match result {
        Ok(finding) => i32::from(finding),
        Err(e) => {
            let body = serde_json::json!({ "error": e.to_string() });
            eprintln!("{}", format::report("error", body));
            e.exit_code()
        }
    }
}

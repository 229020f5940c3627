use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact distributions of the m-th longest runs in sequences with fixed
/// letter counts.
#[derive(Debug, Parser)]
#[command(name = "longrun", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Raw arrangement counts (N, L, W, Z, Q or T).
    Count(CountArgs),
    /// Probability mass function over q.
    Pmf(DistArgs),
    /// Cumulative distribution over q.
    Cdf(DistArgs),
    /// Mean, second moment and variance.
    Moments(DistArgs),
    /// Exact p-value of an observed run length.
    Pvalue(PvalueArgs),
    /// Check every closed form against exhaustive enumeration.
    Verify(VerifyArgs),
    /// Moment report for m = 0..=m-max.
    Table(TableArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DefinitionArg {
    PerLetter,
    Whole,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Tsv,
    Plot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Stat {
    /// every letter within its bound
    N,
    /// every letter within its bound, at least one exactly at it
    L,
    /// every letter exactly at its bound (per-letter), or l_m = q (whole)
    W,
    /// at least m+1 runs of one letter with length q or more
    Z,
    /// l_m <= q over all runs together
    Q,
    /// exactly r runs in total
    T,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Significant digits for decimal renderings [default: 6, or 3 decimal
    /// places for `table`].
    #[arg(long, conflicts_with = "decimals")]
    pub digits: Option<usize>,
    /// Fixed decimal places instead of significant digits.
    #[arg(long)]
    pub decimals: Option<usize>,
    /// Write output here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CompositionArgs {
    /// Letter counts, comma separated (letters are numbered 1..k).
    #[arg(long, required = true)]
    pub counts: String,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[command(flatten)]
    pub composition: CompositionArgs,
    #[arg(long, value_enum)]
    pub stat: Stat,
    /// Run order: one value per letter for N/L/W per letter, otherwise a scalar.
    #[arg(long, default_value = "0")]
    pub m: String,
    /// Length bound: one value per letter for N/L/W per letter, otherwise a scalar.
    #[arg(long)]
    pub q: Option<String>,
    /// Total number of runs (T only).
    #[arg(long)]
    pub r: Option<usize>,
    /// Letter (1-based) for Z.
    #[arg(long, default_value_t = 1)]
    pub letter: usize,
    /// Ranking used by W.
    #[arg(long, value_enum, default_value = "per-letter")]
    pub definition: DefinitionArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct DistArgs {
    #[command(flatten)]
    pub composition: CompositionArgs,
    #[arg(long, value_enum, default_value = "whole")]
    pub definition: DefinitionArg,
    /// Letter (1-based) for the per-letter definition.
    #[arg(long, default_value_t = 1)]
    pub letter: usize,
    #[arg(long, default_value_t = 0)]
    pub m: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct PvalueArgs {
    #[command(flatten)]
    pub dist: DistArgs,
    /// Observed length; the p-value is P(l_m >= q).
    #[arg(long)]
    pub q: usize,
    /// Significance level, as a fraction or a decimal.
    #[arg(long, default_value = "1/20")]
    pub alpha: String,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 10)]
    pub max_total: usize,
    #[arg(long, default_value_t = 3)]
    pub max_k: usize,
    #[arg(long, default_value_t = 4)]
    pub max_order: usize,
    /// Largest number of arrangements enumerated per composition.
    #[arg(long)]
    pub cap: Option<u64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub composition: CompositionArgs,
    #[arg(long, value_enum, default_value = "whole")]
    pub definition: DefinitionArg,
    #[arg(long, default_value_t = 1)]
    pub letter: usize,
    #[arg(long, default_value_t = 3)]
    pub m_max: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

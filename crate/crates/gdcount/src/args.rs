use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "gdcount", version, about = "Generic discrete count distributions and their Gaussian-copula joints")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the pmf at a point or over the default grid.
    Pmf(PmfArgs),
    /// Evaluate the (joint) cdf at a point.
    Cdf(PointArgs),
    /// Marginal quantiles at the given probabilities.
    Quantile(QuantileArgs),
    /// Seeded draws.
    Sample(SampleArgs),
    /// Reproduce the reference table of four bivariate cases.
    Table1(Table1Args),
    /// Exact and approximate pmf matrices for contour plots.
    Contour(ContourArgs),
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Grid half-width in standard deviations.
    #[arg(long, default_value_t = 8.0)]
    pub sigmas: f64,
    /// Target absolute error for quasi-Monte Carlo rectangle probabilities.
    #[arg(long, default_value_t = 1e-7)]
    pub accuracy: f64,
    /// Seed for sampling and for the integration lattice shifts.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Treatment of a fractional Binomial or Negative-Binomial size.
    #[arg(long, value_enum)]
    pub size_policy: Option<Policy>,
}

#[derive(Debug, Args)]
pub struct Dist {
    /// Means, comma separated.
    #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
    pub mu: Vec<f64>,
    /// Variances, comma separated.
    #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
    pub v: Vec<f64>,
    /// Correlation: one value in two dimensions, otherwise the upper
    /// triangle row by row. Defaults to independence.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub rho: Option<Vec<f64>>,
}

#[derive(Debug, Args)]
pub struct PointArgs {
    #[command(flatten)]
    pub dist: Dist,
    /// Evaluation point, one integer per dimension.
    #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
    pub x: Vec<i64>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct PmfArgs {
    #[command(flatten)]
    pub dist: Dist,
    /// Evaluation point; evaluates over the default grid when omitted.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub x: Option<Vec<i64>>,
    /// Which pmf to report for joint distributions.
    #[arg(long, value_enum, default_value_t = Which::Both)]
    pub which: Which,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct QuantileArgs {
    #[command(flatten)]
    pub dist: Dist,
    /// Probabilities in (0, 1), comma separated.
    #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
    pub u: Vec<f64>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub dist: Dist,
    /// Number of draws.
    #[arg(long, short)]
    pub n: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Table1Args {
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct ContourArgs {
    #[command(flatten)]
    pub dist: Dist,
    #[arg(long, value_enum, default_value_t = Which::Both)]
    pub which: Which,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Exact,
    Approx,
    Both,
}

impl Which {
    pub fn exact(self) -> bool {
        self != Which::Approx
    }

    pub fn approx(self) -> bool {
        self != Which::Exact
    }

    pub fn name(self) -> &'static str {
        match self {
            Which::Exact => "exact",
            Which::Approx => "approx",
            Which::Both => "both",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Policy {
    Generalized,
    Floor,
}

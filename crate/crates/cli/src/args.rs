use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "gpsprimes", version, about = "Primes and Carmichael numbers in floor(alpha n^c + beta) sequences")]
pub struct Cli {
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,

    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Exit with status 3 when a membership cannot be decided.
    #[arg(long, global = true)]
    pub strict: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Prime counts in the sequence against the main term.
    Count(CountArgs),
    /// List sequence members in a range.
    Seq(SeqArgs),
    /// Check the trigonometric approximation of the sawtooth at random points.
    VerifyVaaler(VaalerArgs),
    /// Check Heath-Brown's identity for every n up to a bound.
    VerifyHb(HbArgs),
    /// Type I / Type II bilinear sums against their bounds.
    Expsum(ExpsumArgs),
    /// Balance monomial bounds in H.
    OptimizeH(OptimizeArgs),
    /// Carmichael numbers, optionally restricted to sequence primes.
    Carmichael(CarmichaelArgs),
    /// Counts of primes p <= x with p - 1 free of prime factors above y.
    Smooth(SmoothArgs),
    /// Exponent thresholds.
    Thresholds(ThresholdArgs),
}

#[derive(Debug, Clone, Args)]
pub struct SequenceArgs {
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.0)]
    pub beta: f64,
    #[arg(long)]
    pub c: f64,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[command(flatten)]
    pub seq: SequenceArgs,
    #[arg(long, default_value_t = 1)]
    pub q: u64,
    #[arg(long, default_value_t = 0)]
    pub a: u64,
    /// Comma-separated list of x values; `1e6` notation accepted.
    #[arg(long, value_delimiter = ',', required = true, value_parser = parse_real)]
    pub x: Vec<f64>,
    /// Allow parameters outside the theorem window; main-term columns become NaN.
    #[arg(long)]
    pub raw: bool,
}

#[derive(Debug, Args)]
pub struct SeqArgs {
    #[command(flatten)]
    pub seq: SequenceArgs,
    #[arg(long, default_value_t = 1, value_parser = parse_integer)]
    pub from: u64,
    #[arg(long, value_parser = parse_integer)]
    pub to: u64,
    /// Only list members that are prime.
    #[arg(long)]
    pub primes_only: bool,
}

#[derive(Debug, Args)]
pub struct VaalerArgs {
    /// Orders H to check.
    #[arg(long = "order", value_delimiter = ',', default_values_t = [4usize, 16, 64])]
    pub orders: Vec<usize>,
    #[arg(long, default_value_t = 100_000, value_parser = parse_integer)]
    pub samples: u64,
}

#[derive(Debug, Args)]
pub struct HbArgs {
    #[arg(long, value_parser = parse_integer)]
    pub n_max: u64,
    #[arg(long, default_value_t = 3)]
    pub k: u32,
    /// Defaults to ceil((n_max / 2)^(1/k)).
    #[arg(long)]
    pub z: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SumType {
    Type1,
    Type2,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CoefficientChoice {
    Unit,
    Mobius,
    Random,
}

#[derive(Debug, Args)]
pub struct ExpsumArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [1e3, 3e3, 1e4], value_parser = parse_real)]
    pub x: Vec<f64>,
    #[arg(long = "h", value_delimiter = ',', default_values_t = [1u64, 2, 4])]
    pub h: Vec<u64>,
    #[arg(long, default_value_t = 1.05)]
    pub c: f64,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.0)]
    pub xi: f64,
    #[arg(long, value_enum, default_value_t = SumType::Both)]
    pub kind: SumType,
    #[arg(long, value_enum, default_value_t = CoefficientChoice::Mobius)]
    pub coeffs: CoefficientChoice,
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    /// Increasing terms as `A:a` pairs.
    #[arg(long, value_delimiter = ',', value_parser = parse_term)]
    pub growth: Vec<(f64, f64)>,
    /// Decreasing terms as `B:b` pairs.
    #[arg(long, value_delimiter = ',', value_parser = parse_term)]
    pub decay: Vec<(f64, f64)>,
    #[arg(long, default_value_t = 1.0)]
    pub h1: f64,
    #[arg(long)]
    pub h2: Option<f64>,
    /// Solve this many random instances instead and compare with a grid search.
    #[arg(long)]
    pub random: Option<usize>,
}

#[derive(Debug, Args)]
pub struct CarmichaelArgs {
    #[arg(long, value_parser = parse_integer)]
    pub limit: u64,
    /// Restrict to primes of the sequence with this exponent.
    #[arg(long)]
    pub c: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.0)]
    pub beta: f64,
}

#[derive(Debug, Args)]
pub struct SmoothArgs {
    #[arg(long, value_delimiter = ',', required = true, value_parser = parse_real)]
    pub x: Vec<f64>,
    #[arg(long, value_delimiter = ',', required = true, value_parser = parse_real)]
    pub y: Vec<f64>,
}

#[derive(Debug, Args)]
pub struct ThresholdArgs {
    #[arg(long = "E", default_value_t = 0.7039)]
    pub e: f64,
    /// Also evaluate the Carmichael count exponent at these B, B1.
    #[arg(long = "B")]
    pub b: Option<f64>,
    #[arg(long = "B1")]
    pub b1: Option<f64>,
    #[arg(long)]
    pub gamma: Option<f64>,
}

fn parse_real(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("not a number: {s}"))?;
    if !v.is_finite() {
        return Err(format!("not finite: {s}"));
    }
    Ok(v)
}

fn parse_integer(s: &str) -> Result<u64, String> {
    let v = parse_real(s)?;
    if v < 0.0 || v.fract() != 0.0 || v > 9.007_199_254_740_992e15 {
        return Err(format!("not a nonnegative integer: {s}"));
    }
    Ok(v as u64)
}

fn parse_term(s: &str) -> Result<(f64, f64), String> {
    let (c, e) = s.split_once(':').ok_or_else(|| format!("expected COEFF:EXPONENT, got {s}"))?;
    Ok((parse_real(c)?, parse_real(e)?))
}

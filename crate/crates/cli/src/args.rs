use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "lbq",
    version,
    about = "Sequence transformations from the lattice-Boussinesq recursion"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a generated sequence as `n,S` records.
    Generate(GenerateArgs),
    /// Print the table T_0 .. T_K of a sequence.
    Transform(TransformArgs),
    /// Print absolute errors of the lbq and ε tables side by side.
    Compare(CompareArgs),
    /// Estimate the convergence rate and classify it.
    Classify(ClassifyArgs),
    /// Check the bilinear identities and the agreement of all evaluation routes.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Archimedes,
    AltHarmonic,
    Zeta2,
    Geometric,
    Exp,
    Zeta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Float64,
    Bigfloat,
    Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    Lbq,
    Epsilon,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Tsv,
    Markdown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormatArg {
    Lines,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct ModeOpts {
    /// Scalar arithmetic.
    #[arg(long, value_enum, default_value_t = ModeArg::Float64)]
    pub mode: ModeArg,
    /// Working precision in bits for `--mode bigfloat`.
    #[arg(long, default_value_t = 128, value_parser = clap::value_parser!(u32).range(64..))]
    pub precision_bits: u32,
}

#[derive(Debug, Clone, Args)]
pub struct GeneratorOpts {
    /// Built-in sequence family.
    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,
    /// Number of elements.
    #[arg(long, default_value_t = 13, value_parser = clap::value_parser!(u64).range(1..))]
    pub count: u64,
    /// Label of the first element.
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub start: i64,
    /// Ratio or argument for `geometric` and `exp`, e.g. `1/2` or `0.5`.
    #[arg(long)]
    pub z: Option<String>,
    /// Exponent for `zeta`.
    #[arg(long)]
    pub s: Option<u32>,
}

#[derive(Debug, Clone, Args)]
pub struct SourceOpts {
    #[command(flatten)]
    pub generator: GeneratorOpts,
    /// Read the sequence from a file instead of a generator.
    #[arg(long, conflicts_with = "family")]
    pub input: Option<PathBuf>,
    /// Format of `--input`.
    #[arg(long, value_enum, default_value_t = InputFormatArg::Lines)]
    pub format: InputFormatArg,
    /// CSV value column, by header name or zero-based index.
    #[arg(long)]
    pub column: Option<String>,
    /// CSV label column, by header name or zero-based index.
    #[arg(long)]
    pub label_column: Option<String>,
    /// Known limit, overriding the generator's.
    #[arg(long, allow_negative_numbers = true)]
    pub limit: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct OutputOpts {
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub output: OutputFormat,
    /// Decimals printed, rounded half to even.
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
    pub digits: u32,
    /// Per-column decimals as `K=D`, e.g. `--col-digits 1=10,2=10`.
    #[arg(long, value_delimiter = ',', value_parser = parse_col_digits)]
    pub col_digits: Vec<(usize, usize)>,
    /// Print only the first this many rows.
    #[arg(long)]
    pub rows: Option<usize>,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl OutputOpts {
    pub fn digits_for(&self, k: usize) -> usize {
        self.col_digits
            .iter()
            .rev()
            .find(|(col, _)| *col == k)
            .map_or(self.digits as usize, |(_, d)| *d)
    }
}

fn parse_col_digits(s: &str) -> Result<(usize, usize), String> {
    let (k, d) = s
        .split_once('=')
        .ok_or_else(|| format!("expected K=D, got {s:?}"))?;
    let k = k
        .trim()
        .parse()
        .map_err(|_| format!("bad column in {s:?}"))?;
    let d: usize = d
        .trim()
        .parse()
        .map_err(|_| format!("bad digit count in {s:?}"))?;
    if d == 0 {
        return Err("digit counts must be at least 1".into());
    }
    Ok((k, d))
}

#[derive(Debug, Clone, Args)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub generator: GeneratorOpts,
    #[command(flatten)]
    pub mode: ModeOpts,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub output: OutputFormat,
    /// Round to this many decimals; by default values print exactly
    /// (fractions in rational mode, shortest round-trip form for float64).
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub digits: Option<u32>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct TransformArgs {
    #[command(flatten)]
    pub source: SourceOpts,
    #[command(flatten)]
    pub mode: ModeOpts,
    #[command(flatten)]
    pub output: OutputOpts,
    /// Highest order K.
    #[arg(long, default_value_t = 4)]
    pub k_max: usize,
    #[arg(long, value_enum, default_value_t = Algorithm::Lbq)]
    pub algorithm: Algorithm,
    /// Relative breakdown threshold for floating modes (0: exact zero only).
    #[arg(long, default_value_t = 0.0)]
    pub threshold: f64,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub source: SourceOpts,
    #[command(flatten)]
    pub mode: ModeOpts,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub output: OutputFormat,
    /// Significant digits of the errors.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
    pub digits: u32,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 4)]
    pub k_max: usize,
    #[arg(long, default_value_t = 0.0)]
    pub threshold: f64,
}

#[derive(Debug, Clone, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub source: SourceOpts,
    #[command(flatten)]
    pub mode: ModeOpts,
    /// Tolerance δ of the classification bands.
    #[arg(long, default_value_t = 0.05)]
    pub delta: f64,
    /// Ignore any known limit and use the last element as a proxy.
    #[arg(long)]
    pub no_limit: bool,
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..))]
    pub digits: u32,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Check this file instead of random sequences.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = InputFormatArg::Lines)]
    pub format: InputFormatArg,
    #[arg(long)]
    pub column: Option<String>,
    #[command(flatten)]
    pub mode: ModeOpts,
    /// Highest k of the bilinear equations and of the route comparison.
    #[arg(long, default_value_t = 9)]
    pub k_max: usize,
    /// Number of random sequences.
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    /// Length of each random sequence.
    #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(u64).range(3..))]
    pub length: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Largest scaled residual accepted in floating modes.
    #[arg(long, default_value_t = 1e-8)]
    pub tolerance: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

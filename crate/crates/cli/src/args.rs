use std::ops::RangeInclusive;

use clap::{Args, Parser, Subcommand, ValueEnum};
use grover_core::Rounding;

#[derive(Debug, Parser)]
#[command(name = "grover", version, about = "Exact simulation of Grover search over 2^n records")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simulate a search and report the trace, histogram and costs.
    Run(RunArgs),
    /// Tabulate beta, K, the exact failure probability and its bound.
    Plan(PlanArgs),
    /// Re-run the N=8, x0=5 reference search and check every tabulated value.
    PaperExample(PaperExampleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RoundingArg {
    Round,
    Floor,
}

impl From<RoundingArg> for Rounding {
    fn from(r: RoundingArg) -> Self {
        match r {
            RoundingArg::Round => Rounding::Round,
            RoundingArg::Floor => Rounding::Floor,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Number of qubits; the database holds 2^n records.
    #[arg(long)]
    pub n: usize,
    /// Label of the marked record. Drawn from --seed when absent.
    #[arg(long, conflicts_with = "random_target")]
    pub target: Option<u64>,
    /// Draw the marked record from --seed.
    #[arg(long)]
    pub random_target: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of simulated standard-basis measurements.
    #[arg(long, default_value_t = 0)]
    pub shots: u64,
    #[arg(long, value_enum, default_value_t = RoundingArg::Round)]
    pub rounding: RoundingArg,
    /// Override the planned iteration count.
    #[arg(long, allow_negative_numbers = true)]
    pub iterations: Option<i64>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    pub format: OutputFormat,
    /// Emit one row per iteration.
    #[arg(long)]
    pub trace: bool,
    /// Print the dense oracle and Q matrices (n <= 5, table format).
    #[arg(long)]
    pub dense_dump: bool,
    /// Leave out the version/seed/timestamp block in JSON output.
    #[arg(long)]
    pub no_meta: bool,
}

#[derive(Debug, Clone, Args)]
pub struct PlanArgs {
    /// A register size `n` or an inclusive range `a..b`.
    #[arg(long, value_parser = parse_range)]
    pub n: RangeInclusive<u32>,
    #[arg(long, value_enum, default_value_t = RoundingArg::Round)]
    pub rounding: RoundingArg,
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    pub format: OutputFormat,
}

#[derive(Debug, Clone, Args)]
pub struct PaperExampleArgs {
    #[arg(long, value_enum, default_value_t = RoundingArg::Round)]
    pub rounding: RoundingArg,
}

pub fn parse_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let parse = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("bad qubit count {t:?}: {e}"));
    let range = match s.split_once("..") {
        Some((a, b)) => parse(a)?..=parse(b.trim_start_matches('='))?,
        None => {
            let n = parse(s)?;
            n..=n
        }
    };
    if range.start() > range.end() {
        return Err(format!("empty range {s}"));
    }
    Ok(range)
}

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use graphlet_core::scheduler::OrderingKey;
use graphlet_core::{InputFormat, SchedulerConfig};

#[derive(Debug, Parser)]
#[command(name = "graphlet", version, about = "Exact 2-, 3- and 4-vertex graphlet counts")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count all graphlets and print a result document.
    Count(CountArgs),
    /// Compare the engine against brute-force enumeration.
    Verify(VerifyArgs),
    /// Time every edge ordering on one graph and print a CSV table.
    BenchOrdering(BenchArgs),
    /// Summarize the per-edge work distribution of one run.
    WorkReport(ReportArgs),
}

#[derive(Debug, Args)]
pub struct SourceArgs {
    /// Edge list or Matrix Market file; `-` reads stdin.
    pub input: Option<PathBuf>,

    /// Built-in graph instead of a file: `ba:N:ATTACH:SEED`, `er:N:P:SEED`,
    /// `ring:N`, `path:N`, `star:LEAVES`, `complete:N`, `empty:N`.
    #[arg(long, value_name = "SPEC", conflicts_with = "input")]
    pub generate: Option<String>,

    #[arg(long, value_enum, default_value_t = FormatArg::Auto)]
    pub input_format: FormatArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Auto,
    EdgeList,
    Mtx,
}

impl From<FormatArg> for InputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Auto => InputFormat::Auto,
            FormatArg::EdgeList => InputFormat::EdgeList,
            FormatArg::Mtx => InputFormat::MatrixMarket,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrderingArg {
    Degree,
    Volume,
    Rand,
    DegreeRev,
    VolumeRev,
}

impl From<OrderingArg> for OrderingKey {
    fn from(o: OrderingArg) -> Self {
        match o {
            OrderingArg::Degree => OrderingKey::Degree,
            OrderingArg::Volume => OrderingKey::Volume,
            OrderingArg::Rand => OrderingKey::Random,
            OrderingArg::DegreeRev => OrderingKey::DegreeReversed,
            OrderingArg::VolumeRev => OrderingKey::VolumeReversed,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SchedulerArgs {
    #[arg(long, default_value_t = 4)]
    pub cpu_workers: usize,
    #[arg(long, default_value_t = 2)]
    pub gpu_pools: usize,
    #[arg(long, default_value_t = 2)]
    pub gpu_workers_per_pool: usize,
    /// Fraction of edges initially given to the CPU pool.
    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,
    /// Fraction of edges initially dealt to the GPU pools.
    #[arg(long, default_value_t = 0.80)]
    pub gamma: f64,
    #[arg(long, default_value_t = 1)]
    pub chunk_cpu: usize,
    #[arg(long, default_value_t = 64)]
    pub chunk_gpu: usize,
    #[arg(long, default_value_t = 1024)]
    pub split_threshold: usize,
    #[arg(long, value_enum, default_value_t = OrderingArg::Degree)]
    pub ordering: OrderingArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl SchedulerArgs {
    pub fn config(&self) -> SchedulerConfig {
        SchedulerConfig {
            cpu_workers: self.cpu_workers,
            gpu_pools: self.gpu_pools,
            gpu_workers_per_pool: self.gpu_workers_per_pool,
            alpha: self.alpha,
            gamma: self.gamma,
            b_cpu: self.chunk_cpu,
            b_gpu: self.chunk_gpu,
            split_threshold: self.split_threshold,
            ordering: self.ordering.into(),
            seed: self.seed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[command(flatten)]
    pub scheduler: SchedulerArgs,
    /// Also write per-edge counts as CSV and embed them in the document.
    #[arg(long, value_name = "PATH")]
    pub micro: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Write the document here instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[command(flatten)]
    pub scheduler: SchedulerArgs,
    /// Check `TRIALS` random graphs G(N, P) seeded from `SEED` upward.
    #[arg(long, num_args = 4, value_names = ["N", "P", "SEED", "TRIALS"], allow_negative_numbers = true)]
    pub random: Option<Vec<String>>,
    /// Add one to the engine's `Xi` before comparing.
    #[arg(long, value_name = "I", value_parser = clap::value_parser!(u8).range(1..=17))]
    pub inject_fault: Option<u8>,
    /// Largest vertex count handed to the brute-force oracle.
    #[arg(long, default_value_t = graphlet_core::oracle::DEFAULT_CAP)]
    pub cap: usize,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[command(flatten)]
    pub scheduler: SchedulerArgs,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
    pub repeats: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[command(flatten)]
    pub scheduler: SchedulerArgs,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub format: ReportFormat,
}

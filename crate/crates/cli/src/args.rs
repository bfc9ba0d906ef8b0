use std::path::PathBuf;

use citepop_core::{Method, MonthStamp};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "citepop",
    version,
    about = "Rank papers in a citation network by predicted future popularity"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Load and clean a corpus, then report counts.
    Ingest(IngestArgs),
    /// Generate a seeded synthetic corpus.
    Synth(SynthArgs),
    /// Score every paper of the snapshot at `--t`.
    Rank(RankArgs),
    /// Score papers at `--t` and compare with citations gained over the next `--tf` months.
    Evaluate(EvaluateArgs),
    /// Evaluate a (tau, alpha) grid for CiteRank or age diffusion.
    Sweep(SweepArgs),
    /// Export the data behind every figure analogue in one pass.
    Figures(FiguresArgs),
}

#[derive(Debug, Args)]
pub struct CorpusArgs {
    /// Paper metadata CSV (`external_id,pub_date`).
    #[arg(long)]
    pub papers: PathBuf,
    /// Citation pairs CSV (`citing_id,cited_id`).
    #[arg(long)]
    pub citations: PathBuf,
}

#[derive(Debug, Args)]
pub struct SnapshotArgs {
    /// Testing time, `YYYY-MM`.
    #[arg(long)]
    pub t: MonthStamp,
    /// Keep papers with no citations at `--t`.
    #[arg(long)]
    pub no_filter: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Pr,
    Cr,
    Rs,
    Ad,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Pr => Method::PageRank,
            MethodArg::Cr => Method::CiteRank,
            MethodArg::Rs => Method::Rescaled,
            MethodArg::Ad => Method::AgeDiffusion,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepMethodArg {
    Cr,
    Ad,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Ranker parameters; flags that do not apply to the chosen method are rejected.
#[derive(Debug, Clone, Default, Args)]
pub struct ParamArgs {
    /// PageRank follow probability (pr, rs).
    #[arg(long)]
    pub c: Option<f64>,
    /// Decay timescale in months (cr, ad).
    #[arg(long)]
    pub tau: Option<f64>,
    /// Follow probability (cr, ad).
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Rescaling window in papers, even (rs).
    #[arg(long)]
    pub delta_p: Option<usize>,
    /// Per-step follow decay base (ad).
    #[arg(long)]
    pub step_base: Option<f64>,
    /// Convergence tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    /// PageRank iteration cap (pr, rs).
    #[arg(long)]
    pub max_iter: Option<usize>,
    /// Series term cap (cr, ad).
    #[arg(long)]
    pub max_terms: Option<usize>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct IngestArgs {
    #[command(flatten)]
    pub corpus: CorpusArgs,
    /// Also report snapshot counts at this month.
    #[arg(long)]
    pub t: Option<MonthStamp>,
    #[arg(long)]
    pub no_filter: bool,
    /// JSON summary file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[arg(long, default_value_t = 5000)]
    pub n_papers: usize,
    #[arg(long, default_value_t = 20)]
    pub per_month: usize,
    /// References per new paper.
    #[arg(long, default_value_t = 10)]
    pub refs: usize,
    /// Aging timescale in months.
    #[arg(long, default_value_t = 24.0)]
    pub theta: f64,
    /// Log-normal fitness spread; 0 gives equal fitness.
    #[arg(long, default_value_t = 1.0)]
    pub fitness_sigma: f64,
    /// First publication month.
    #[arg(long, default_value = "1990-01")]
    pub start: MonthStamp,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Writes `papers.csv` and `citations.csv` here.
    #[arg(long, env = "CITEPOP_OUT_DIR", default_value = ".")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct RankArgs {
    #[command(flatten)]
    pub corpus: CorpusArgs,
    #[arg(long, value_enum)]
    pub method: MethodArg,
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub snapshot: SnapshotArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Exit with status 3 instead of writing when the ranker does not converge.
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    #[command(flatten)]
    pub corpus: CorpusArgs,
    #[arg(long, value_enum)]
    pub method: MethodArg,
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub snapshot: SnapshotArgs,
    /// Future window in months.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub tf: u32,
    /// Top fraction used by precision.
    #[arg(long, default_value_t = 0.01)]
    pub fraction: f64,
    #[command(flatten)]
    pub output: OutputArgs,
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub corpus: CorpusArgs,
    #[arg(long, value_enum)]
    pub method: SweepMethodArg,
    /// Comma list or `start:step:end` range.
    #[arg(long, default_value = "6:6:120")]
    pub taus: String,
    #[arg(long, default_value = "0.05:0.05:0.95")]
    pub alphas: String,
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub snapshot: SnapshotArgs,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub tf: u32,
    #[arg(long, default_value_t = 0.01)]
    pub fraction: f64,
    /// Writes `surface_<method>.csv` and `.json` here.
    #[arg(long, env = "CITEPOP_OUT_DIR", default_value = ".")]
    pub out_dir: PathBuf,
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Args)]
pub struct FiguresArgs {
    #[command(flatten)]
    pub corpus: CorpusArgs,
    #[command(flatten)]
    pub snapshot: SnapshotArgs,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub tf: u32,
    #[arg(long, default_value_t = 0.01)]
    pub fraction: f64,
    /// Seed for the random testing times of the multi-time averages.
    #[arg(long)]
    pub seed: u64,
    /// Number of random testing times.
    #[arg(long, default_value_t = 5)]
    pub times: usize,
    #[arg(long, default_value = "1990-01")]
    pub time_lo: MonthStamp,
    #[arg(long, default_value = "2006-01")]
    pub time_hi: MonthStamp,
    /// Future windows for the multi-time averages.
    #[arg(long, default_value = "12,24,36,48,60")]
    pub tfs: String,
    #[arg(long, default_value = "6:6:120")]
    pub taus: String,
    #[arg(long, default_value = "0.05:0.05:0.95")]
    pub alphas: String,
    #[arg(long)]
    pub c: Option<f64>,
    #[arg(long)]
    pub delta_p: Option<usize>,
    /// Age bin width in months.
    #[arg(long, default_value_t = 60, value_parser = clap::value_parser!(u32).range(1..))]
    pub bin_width: u32,
    #[arg(long, env = "CITEPOP_OUT_DIR", default_value = ".")]
    pub out_dir: PathBuf,
    #[arg(long)]
    pub strict: bool,
}

//! Popularity prediction on citation networks.
//!
//! The crate ranks papers in a training snapshot of a citation graph with
//! four scores (PageRank, CiteRank, rescaled PageRank and the age-based
//! diffusion model) and measures how well each score anticipates the
//! citations papers collect over a future window.
//!
//! ```no_run
//! use citepop_core::{ingest, rank, snapshot, MonthStamp, RankerConfig, AgeDiffusionParams};
//!
//! let corpus = ingest::load_corpus("papers.csv", "citations.csv")?;
//! let t: MonthStamp = "2010-01".parse()?;
//! let snap = snapshot(&corpus.graph, t, true)?;
//! let scores = rank(&snap, &RankerConfig::AgeDiffusion(AgeDiffusionParams::new(24.0, 0.74)))?;
//! # Ok::<(), citepop_core::Error>(())
//! ```

pub mod error;
pub mod evaluation;
pub mod export;
pub mod graph;
pub mod ingest;
pub mod month;
pub mod rankers;
pub mod ranking;
pub mod snapshot;
pub mod synth;

pub use error::{Error, Result};
pub use evaluation::{
    evaluate, future_popularity, pearson, precision_at_top, spearman, Correlation, EvalReport, FuturePopularity,
};
pub use graph::{build_graph, BuildReport, CitationGraph, PaperRecord};
pub use month::MonthStamp;
pub use rankers::{
    age_diffusion, citerank, pagerank, rank, rescaled_pagerank, seed_vector, AgeDiffusionParams, CiteRankParams,
    Method, PageRankParams, RankerConfig, RescaleParams, ScoreVector,
};
pub use snapshot::{snapshot, GraphSnapshot};

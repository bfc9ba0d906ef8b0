//! Prediction scores: PageRank, CiteRank, rescaled PageRank and the
//! age-based diffusion model.

mod age_diffusion;
mod citerank;
mod pagerank;
mod rescaled;
mod seed;
mod series;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::snapshot::GraphSnapshot;

pub use age_diffusion::age_diffusion;
pub use citerank::citerank;
pub use pagerank::pagerank;
pub use rescaled::{rescale_ordered, rescaled_pagerank, window_stats, WindowStats};
pub use seed::seed_vector;
pub use series::transfer_pull;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    #[serde(rename = "pr")]
    PageRank,
    #[serde(rename = "cr")]
    CiteRank,
    #[serde(rename = "rs")]
    Rescaled,
    #[serde(rename = "ad")]
    AgeDiffusion,
    /// Plain seed vector, exposed for diagnostics.
    #[serde(rename = "seed")]
    Seed,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::PageRank,
        Method::CiteRank,
        Method::Rescaled,
        Method::AgeDiffusion,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Method::PageRank => "pr",
            Method::CiteRank => "cr",
            Method::Rescaled => "rs",
            Method::AgeDiffusion => "ad",
            Method::Seed => "seed",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pr" => Ok(Method::PageRank),
            "cr" => Ok(Method::CiteRank),
            "rs" => Ok(Method::Rescaled),
            "ad" => Ok(Method::AgeDiffusion),
            _ => Err(Error::InvalidParameter(format!("unknown method `{s}` (pr|cr|rs|ad)"))),
        }
    }
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg()))
    }
}

fn check_tol(tol: f64) -> Result<()> {
    check(tol.is_finite() && tol > 0.0, || format!("tol must be > 0, got {tol}"))
}

fn check_unit_open(name: &str, v: f64) -> Result<()> {
    check(v > 0.0 && v < 1.0, || format!("{name} must lie in (0, 1), got {v}"))
}

/// Follow probabilities accept 0, which reduces the series to the seed vector.
fn check_follow(v: f64) -> Result<()> {
    check((0.0..1.0).contains(&v), || format!("alpha must lie in [0, 1), got {v}"))
}

fn check_tau(tau: f64) -> Result<()> {
    check(tau.is_finite() && tau > 0.0, || format!("tau must be > 0, got {tau}"))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PageRankParams {
    /// Probability of following a reference instead of teleporting.
    pub c: f64,
    /// Stop when the L1 change between iterates falls below this.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for PageRankParams {
    fn default() -> Self {
        Self {
            c: 0.5,
            tol: 1e-12,
            max_iter: 1000,
        }
    }
}

impl PageRankParams {
    pub fn validate(&self) -> Result<()> {
        check_unit_open("c", self.c)?;
        check_tol(self.tol)?;
        check(self.max_iter > 0, || "max_iter must be positive".into())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CiteRankParams {
    /// Seed decay timescale in months.
    pub tau: f64,
    pub alpha: f64,
    /// Relative L1 truncation threshold for the series.
    pub tol: f64,
    pub max_terms: usize,
}

impl Default for CiteRankParams {
    fn default() -> Self {
        Self {
            tau: 24.0,
            alpha: 0.5,
            tol: 1e-12,
            max_terms: 100,
        }
    }
}

impl CiteRankParams {
    pub fn new(tau: f64, alpha: f64) -> Self {
        Self {
            tau,
            alpha,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_tau(self.tau)?;
        check_follow(self.alpha)?;
        check_tol(self.tol)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AgeDiffusionParams {
    /// Decay timescale in months, shared by the seed vector and edge weights.
    pub tau: f64,
    /// Follow probability on the first step.
    pub alpha: f64,
    /// Step `i` follows with probability `alpha / step_decay_base^(i-1)`.
    pub step_decay_base: f64,
    pub tol: f64,
    pub max_terms: usize,
}

impl Default for AgeDiffusionParams {
    fn default() -> Self {
        Self {
            tau: 24.0,
            alpha: 0.74,
            step_decay_base: 10.0,
            tol: 1e-12,
            max_terms: 30,
        }
    }
}

impl AgeDiffusionParams {
    pub fn new(tau: f64, alpha: f64) -> Self {
        Self {
            tau,
            alpha,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_tau(self.tau)?;
        check_follow(self.alpha)?;
        check(self.step_decay_base.is_finite() && self.step_decay_base > 1.0, || {
            format!("step_decay_base must be > 1, got {}", self.step_decay_base)
        })?;
        check_tol(self.tol)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RescaleParams {
    /// Window size in papers; each paper is compared with `delta_p / 2`
    /// neighbours on either side in publication order.
    pub delta_p: usize,
}

impl Default for RescaleParams {
    fn default() -> Self {
        Self { delta_p: 1000 }
    }
}

impl RescaleParams {
    pub fn validate(&self) -> Result<()> {
        check(self.delta_p >= 2 && self.delta_p.is_multiple_of(2), || {
            format!("delta_p must be even and >= 2, got {}", self.delta_p)
        })
    }
}

/// Full parameter record for one ranking run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method")]
pub enum RankerConfig {
    #[serde(rename = "pr")]
    PageRank(PageRankParams),
    #[serde(rename = "cr")]
    CiteRank(CiteRankParams),
    #[serde(rename = "rs")]
    Rescaled {
        pagerank: PageRankParams,
        rescale: RescaleParams,
    },
    #[serde(rename = "ad")]
    AgeDiffusion(AgeDiffusionParams),
    #[serde(rename = "seed")]
    Seed { tau: f64 },
}

impl RankerConfig {
    pub fn method(&self) -> Method {
        match self {
            RankerConfig::PageRank(_) => Method::PageRank,
            RankerConfig::CiteRank(_) => Method::CiteRank,
            RankerConfig::Rescaled { .. } => Method::Rescaled,
            RankerConfig::AgeDiffusion(_) => Method::AgeDiffusion,
            RankerConfig::Seed { .. } => Method::Seed,
        }
    }

    /// Default parameters for `method`.
    pub fn default_for(method: Method) -> Self {
        match method {
            Method::PageRank => RankerConfig::PageRank(PageRankParams::default()),
            Method::CiteRank => RankerConfig::CiteRank(CiteRankParams::default()),
            Method::Rescaled => RankerConfig::Rescaled {
                pagerank: PageRankParams::default(),
                rescale: RescaleParams::default(),
            },
            Method::AgeDiffusion => RankerConfig::AgeDiffusion(AgeDiffusionParams::default()),
            Method::Seed => RankerConfig::Seed { tau: 24.0 },
        }
    }

    /// Replaces `tau` and `alpha` for the methods that have them.
    pub fn with_tau_alpha(self, tau: f64, alpha: f64) -> Self {
        match self {
            RankerConfig::CiteRank(p) => RankerConfig::CiteRank(CiteRankParams { tau, alpha, ..p }),
            RankerConfig::AgeDiffusion(p) => RankerConfig::AgeDiffusion(AgeDiffusionParams { tau, alpha, ..p }),
            RankerConfig::Seed { .. } => RankerConfig::Seed { tau },
            other => other,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            RankerConfig::PageRank(p) => p.validate(),
            RankerConfig::CiteRank(p) => p.validate(),
            RankerConfig::Rescaled { pagerank, rescale } => {
                pagerank.validate()?;
                rescale.validate()
            }
            RankerConfig::AgeDiffusion(p) => p.validate(),
            RankerConfig::Seed { tau } => check_tau(*tau),
        }
    }
}

/// Scores aligned to a snapshot's node indexing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreVector {
    pub values: Vec<f64>,
    pub method: Method,
    pub params: RankerConfig,
    /// False when an iteration or series cap was hit before the tolerance.
    pub converged: bool,
    /// Iterations (PageRank) or series terms beyond the seed (CiteRank, AD).
    pub iterations: usize,
}

impl ScoreVector {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Runs the ranker described by `config` on `snapshot`.
pub fn rank(snapshot: &GraphSnapshot<'_>, config: &RankerConfig) -> Result<ScoreVector> {
    match config {
        RankerConfig::PageRank(p) => pagerank(snapshot, p),
        RankerConfig::CiteRank(p) => citerank(snapshot, p),
        RankerConfig::Rescaled { pagerank: p, rescale } => {
            let pr = pagerank(snapshot, p)?;
            rescaled_pagerank(snapshot, &pr, rescale)
        }
        RankerConfig::AgeDiffusion(p) => age_diffusion(snapshot, p),
        RankerConfig::Seed { tau } => seed_vector(snapshot, *tau),
    }
}

#[cfg(test)]
pub(crate) mod testutil {
    use crate::graph::{build_graph, CitationGraph, PaperRecord};
    use crate::month::MonthStamp;

    /// Builds a graph from `(id, month)` pairs and `(citing, cited)` edges.
    pub fn graph(papers: &[(&str, u32)], edges: &[(&str, &str)]) -> CitationGraph {
        let recs: Vec<_> = papers
            .iter()
            .map(|&(id, mo)| PaperRecord::new(id, MonthStamp::new(mo).unwrap()))
            .collect();
        build_graph(&recs, edges.iter().copied()).unwrap()
    }

    pub fn month(v: u32) -> MonthStamp {
        MonthStamp::new(v).unwrap()
    }
}

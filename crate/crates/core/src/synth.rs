//! Seeded synthetic citation networks with preferential attachment,
//! heterogeneous fitness and exponential aging.
//!
//! Papers arrive in monthly batches. Each new paper cites `m` distinct papers
//! from earlier months, drawn without replacement with probability
//! proportional to `(in_degree + 1) * fitness * exp(-age / theta)`. Sampling
//! is linear in the number of existing papers per arrival, which is fine for
//! corpora of a few tens of thousands of papers.

use rand::seq::index::sample_weighted;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, LogNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::PaperRecord;
use crate::month::MonthStamp;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FitnessDist {
    LogNormal { mu: f64, sigma: f64 },
    Constant { value: f64 },
}

impl Default for FitnessDist {
    fn default() -> Self {
        FitnessDist::LogNormal { mu: 0.0, sigma: 1.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SynthParams {
    pub n_papers: usize,
    pub papers_per_month: usize,
    /// References per paper, `m`.
    pub refs_per_paper: usize,
    pub fitness: FitnessDist,
    /// Relevance decay timescale in months.
    pub theta: f64,
    pub seed: u64,
    /// Publication month of the first batch.
    pub start: MonthStamp,
}

impl Default for SynthParams {
    fn default() -> Self {
        Self {
            n_papers: 5000,
            papers_per_month: 20,
            refs_per_paper: 10,
            fitness: FitnessDist::default(),
            theta: 24.0,
            seed: 42,
            start: MonthStamp::from_year_month(1990, 1).expect("valid month"),
        }
    }
}

impl SynthParams {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        if self.n_papers == 0 || self.papers_per_month == 0 {
            return bad("n_papers and papers_per_month must be positive".into());
        }
        if self.n_papers < self.refs_per_paper + 1 {
            return bad(format!(
                "n_papers must be at least refs_per_paper + 1 = {}",
                self.refs_per_paper + 1
            ));
        }
        if !(self.theta.is_finite() && self.theta > 0.0) {
            return bad(format!("theta must be > 0, got {}", self.theta));
        }
        match self.fitness {
            FitnessDist::LogNormal { mu, sigma } if !(mu.is_finite() && sigma.is_finite() && sigma >= 0.0) => {
                bad(format!("invalid log-normal fitness (mu={mu}, sigma={sigma})"))
            }
            FitnessDist::Constant { value } if !(value.is_finite() && value > 0.0) => {
                bad(format!("constant fitness must be > 0, got {value}"))
            }
            _ => {
                let months = self.n_papers.div_ceil(self.papers_per_month);
                self.start.checked_add(months as u32 - 1)?;
                Ok(())
            }
        }
    }

    /// Month of the last batch.
    pub fn last_month(&self) -> MonthStamp {
        let months = self.n_papers.div_ceil(self.papers_per_month) as u32;
        MonthStamp::new(self.start.value() + months - 1).expect("validated")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthCorpus {
    pub records: Vec<PaperRecord>,
    /// `(citing, cited)` pairs.
    pub edges: Vec<(String, String)>,
    /// Hidden fitness per record.
    pub fitness: Vec<f64>,
}

/// Zero-padded ids so lexical order matches arrival order.
fn paper_id(i: usize, width: usize) -> String {
    format!("S{i:0width$}")
}

pub fn generate(params: &SynthParams) -> Result<SynthCorpus> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let n = params.n_papers;
    let m = params.refs_per_paper;
    let width = (n.max(2) - 1).to_string().len();

    let fitness: Vec<f64> = match params.fitness {
        FitnessDist::LogNormal { mu, sigma } => {
            let d = LogNormal::new(mu, sigma).map_err(|e| Error::InvalidParameter(e.to_string()))?;
            (0..n).map(|_| d.sample(&mut rng)).collect()
        }
        FitnessDist::Constant { value } => vec![value; n],
    };

    let mut records = Vec::with_capacity(n);
    let mut edges = Vec::with_capacity(n * m);
    let mut in_degree = vec![0u32; n];
    let mut pub_month: Vec<u32> = Vec::with_capacity(n);
    let mut weights: Vec<f64> = Vec::with_capacity(n);

    let mut next = 0;
    let mut month = params.start.value();
    while next < n {
        let batch_end = (next + params.papers_per_month).min(n);
        // only papers from earlier months can be cited
        let existing = next;
        let aging: Vec<f64> = pub_month
            .iter()
            .map(|&pm| (-((month - pm) as f64) / params.theta).exp())
            .collect();
        for i in next..batch_end {
            records.push(PaperRecord::new(paper_id(i, width), MonthStamp::new(month)?));
            pub_month.push(month);
            if m == 0 || existing == 0 {
                continue;
            }
            let picks: Vec<usize> = if existing <= m {
                (0..existing).collect()
            } else {
                weights.clear();
                weights.extend((0..existing).map(|j| (in_degree[j] as f64 + 1.0) * fitness[j] * aging[j]));
                let mut p: Vec<usize> = sample_weighted(&mut rng, existing, |j| weights[j], m)
                    .map_err(|e| Error::InvalidParameter(format!("attachment weights: {e}")))?
                    .into_iter()
                    .collect();
                p.sort_unstable();
                p
            };
            for j in picks {
                in_degree[j] += 1;
                edges.push((paper_id(i, width), paper_id(j, width)));
            }
        }
        next = batch_end;
        month += 1;
    }
    Ok(SynthCorpus {
        records,
        edges,
        fitness,
    })
}

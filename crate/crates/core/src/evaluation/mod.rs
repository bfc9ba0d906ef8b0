//! Ground-truth future popularity, correlation and precision metrics, the
//! age-bias diagnostics and parameter sweeps.

pub mod analysis;
mod metrics;
mod popularity;
pub mod sweep;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::month::MonthStamp;
use crate::rankers::{Method, RankerConfig, ScoreVector};

pub use analysis::{
    cumulative_age_distribution, delta_r, detection_rate_by_age, ranking_scatter, AgeBin, AgeBinStats, DeltaR,
    ScatterPoint,
};
pub use metrics::{average_ranks, pearson, precision_at_top, spearman, Correlation, Precision};
pub use popularity::{future_popularity, FuturePopularity};
pub use sweep::{
    draw_testing_times, multi_time_average, parameter_sweep, Metric, ParamChoice, Surface, SweepCell, TimeAverage,
};

/// Top fraction used by the precision metric unless overridden.
pub const DEFAULT_TOP_FRACTION: f64 = 0.01;

/// All metrics for one (method, t, T_f) run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub method: Method,
    pub params: RankerConfig,
    pub t: MonthStamp,
    pub tf: u32,
    pub n_papers: usize,
    pub pearson: f64,
    pub pearson_degenerate: bool,
    pub spearman: f64,
    pub spearman_degenerate: bool,
    pub precision: f64,
    pub n_top: usize,
    pub convergence_ok: bool,
}

impl EvalReport {
    pub fn metric(&self, m: Metric) -> f64 {
        match m {
            Metric::Precision => self.precision,
            Metric::Spearman => self.spearman,
            Metric::Pearson => self.pearson,
        }
    }
}

/// Scores one ranking against future popularity.
pub fn evaluate(scores: &ScoreVector, future: &FuturePopularity, fraction: f64) -> Result<EvalReport> {
    if scores.len() != future.len() {
        return Err(Error::LengthMismatch {
            left: scores.len(),
            right: future.len(),
        });
    }
    let f = future.as_f64();
    let p = pearson(&scores.values, &f)?;
    let s = spearman(&scores.values, &f)?;
    let prec = precision_at_top(&scores.values, &f, fraction)?;
    Ok(EvalReport {
        method: scores.method,
        params: scores.params,
        t: future.t,
        tf: future.tf,
        n_papers: scores.len(),
        pearson: p.value,
        pearson_degenerate: p.degenerate,
        spearman: s.value,
        spearman_degenerate: s.degenerate,
        precision: prec.precision,
        n_top: prec.n_top,
        convergence_ok: scores.converged,
    })
}

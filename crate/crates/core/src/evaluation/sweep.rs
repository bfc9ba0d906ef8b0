//! Parameter grids over (tau, alpha) and averages over several testing times.

use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{evaluate, future_popularity, EvalReport};
use crate::error::{Error, Result};
use crate::graph::CitationGraph;
use crate::month::MonthStamp;
use crate::rankers::{rank, Method, RankerConfig, ScoreVector};
use crate::snapshot::GraphSnapshot;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Precision,
    Spearman,
    Pearson,
}

impl Metric {
    pub const ALL: [Metric; 3] = [Metric::Precision, Metric::Spearman, Metric::Pearson];

    pub fn name(self) -> &'static str {
        match self {
            Metric::Precision => "precision",
            Metric::Spearman => "spearman",
            Metric::Pearson => "pearson",
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Metric::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown metric `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepCell {
    pub tau: f64,
    pub alpha: f64,
    pub report: EvalReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BestCell {
    pub metric: Metric,
    pub tau: f64,
    pub alpha: f64,
    pub value: f64,
}

/// Grid of evaluation reports, tau-major then alpha, in the order given.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Surface {
    pub method: Method,
    pub taus: Vec<f64>,
    pub alphas: Vec<f64>,
    pub cells: Vec<SweepCell>,
    pub best: Vec<BestCell>,
}

impl Surface {
    pub fn best(&self, metric: Metric) -> &BestCell {
        self.best
            .iter()
            .find(|b| b.metric == metric)
            .expect("every metric has a best cell")
    }

    pub fn cell(&self, tau_idx: usize, alpha_idx: usize) -> &SweepCell {
        &self.cells[tau_idx * self.alphas.len() + alpha_idx]
    }
}

/// First maximum in grid order.
fn argmax<'a>(cells: impl Iterator<Item = (f64, f64, f64)> + 'a) -> Option<(f64, f64, f64)> {
    let mut best: Option<(f64, f64, f64)> = None;
    for c in cells {
        if best.is_none_or(|b| c.2 > b.2) {
            best = Some(c);
        }
    }
    best
}

fn check_grid(base: &RankerConfig, taus: &[f64], alphas: &[f64]) -> Result<Vec<(f64, f64)>> {
    if taus.is_empty() || alphas.is_empty() {
        return Err(Error::InvalidParameter("tau and alpha grids must be non-empty".into()));
    }
    if !matches!(base, RankerConfig::CiteRank(_) | RankerConfig::AgeDiffusion(_)) {
        return Err(Error::InvalidParameter(format!(
            "method `{}` has no (tau, alpha) parameters to sweep",
            base.method()
        )));
    }
    let grid: Vec<(f64, f64)> = taus.iter().flat_map(|&t| alphas.iter().map(move |&a| (t, a))).collect();
    for &(t, a) in &grid {
        base.with_tau_alpha(t, a).validate()?;
    }
    Ok(grid)
}

/// Evaluates `base` with every `(tau, alpha)` pair. Cells run in parallel and
/// are gathered in grid order.
pub fn parameter_sweep(
    snapshot: &GraphSnapshot<'_>,
    future: &super::FuturePopularity,
    base: &RankerConfig,
    taus: &[f64],
    alphas: &[f64],
    fraction: f64,
) -> Result<Surface> {
    let grid = check_grid(base, taus, alphas)?;
    let cells = grid
        .par_iter()
        .map(|&(tau, alpha)| {
            let scores = rank(snapshot, &base.with_tau_alpha(tau, alpha))?;
            Ok(SweepCell {
                tau,
                alpha,
                report: evaluate(&scores, future, fraction)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let best = Metric::ALL
        .into_iter()
        .map(|metric| {
            let (tau, alpha, value) =
                argmax(cells.iter().map(|c| (c.tau, c.alpha, c.report.metric(metric)))).expect("non-empty grid");
            BestCell {
                metric,
                tau,
                alpha,
                value,
            }
        })
        .collect();
    Ok(Surface {
        method: base.method(),
        taus: taus.to_vec(),
        alphas: alphas.to_vec(),
        cells,
        best,
    })
}

/// Fixed parameters, or a (tau, alpha) grid re-optimized per metric and T_f.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ParamChoice {
    Fixed(RankerConfig),
    Grid {
        base: RankerConfig,
        taus: Vec<f64>,
        alphas: Vec<f64>,
    },
}

impl ParamChoice {
    fn configs(&self) -> Result<Vec<RankerConfig>> {
        match self {
            ParamChoice::Fixed(cfg) => {
                cfg.validate()?;
                Ok(vec![*cfg])
            }
            ParamChoice::Grid { base, taus, alphas } => Ok(check_grid(base, taus, alphas)?
                .into_iter()
                .map(|(t, a)| base.with_tau_alpha(t, a))
                .collect()),
        }
    }

    pub fn method(&self) -> Method {
        match self {
            ParamChoice::Fixed(cfg) => cfg.method(),
            ParamChoice::Grid { base, .. } => base.method(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeAverageRow {
    pub tf: u32,
    pub metric: Metric,
    /// Mean of the metric over all testing times.
    pub value: f64,
    /// Parameters that achieved it.
    pub params: RankerConfig,
    pub convergence_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeAverage {
    pub method: Method,
    pub times: Vec<MonthStamp>,
    pub tfs: Vec<u32>,
    /// Grid choices are re-optimized for every (metric, T_f) pair.
    pub per_metric_optimization: bool,
    pub rows: Vec<TimeAverageRow>,
}

impl TimeAverage {
    pub fn value(&self, tf: u32, metric: Metric) -> Option<f64> {
        self.rows
            .iter()
            .find(|r| r.tf == tf && r.metric == metric)
            .map(|r| r.value)
    }
}

/// Averages every metric over `times` for each future window in `tfs`.
///
/// Each testing time is ranked once per parameter set; every T_f then reuses
/// those scores. With a grid, the reported value for a (metric, T_f) pair is
/// the best time-averaged value over the grid.
pub fn multi_time_average(
    graph: &CitationGraph,
    times: &[MonthStamp],
    tfs: &[u32],
    choice: &ParamChoice,
    fraction: f64,
    filter_uncited: bool,
) -> Result<TimeAverage> {
    if times.is_empty() || tfs.is_empty() {
        return Err(Error::InvalidParameter(
            "need at least one testing time and one T_f".into(),
        ));
    }
    let configs = choice.configs()?;
    let max_tf = *tfs.iter().max().unwrap();
    let last = graph.last_month().map_or(0, MonthStamp::value);
    for &t in times {
        if t.value() + max_tf > last {
            return Err(Error::Cell {
                t,
                tf: max_tf,
                source: Box::new(Error::WindowBeyondCorpus {
                    end: t.value() + max_tf,
                    last,
                }),
            });
        }
    }
    let wrap = |t: MonthStamp, tf: u32| {
        move |e: Error| Error::Cell {
            t,
            tf,
            source: Box::new(e),
        }
    };

    // reports[time][tf][config]
    let reports: Vec<Vec<Vec<EvalReport>>> = times
        .par_iter()
        .map(|&t| {
            let snap = GraphSnapshot::build(graph, t, filter_uncited).map_err(wrap(t, 0))?;
            let scores: Vec<ScoreVector> = configs
                .par_iter()
                .map(|cfg| rank(&snap, cfg))
                .collect::<Result<_>>()
                .map_err(wrap(t, 0))?;
            tfs.iter()
                .map(|&tf| {
                    let fut = future_popularity(graph, &snap, tf).map_err(wrap(t, tf))?;
                    scores
                        .iter()
                        .map(|s| evaluate(s, &fut, fraction).map_err(wrap(t, tf)))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;

    let nt = times.len() as f64;
    let mut rows = Vec::new();
    for (k, &tf) in tfs.iter().enumerate() {
        for metric in Metric::ALL {
            let means = (0..configs.len()).map(|c| {
                let mean = reports.iter().map(|per_t| per_t[k][c].metric(metric)).sum::<f64>() / nt;
                (c as f64, 0.0, mean)
            });
            let (c, _, value) = argmax(means).expect("at least one config");
            let c = c as usize;
            rows.push(TimeAverageRow {
                tf,
                metric,
                value,
                params: configs[c],
                convergence_ok: reports.iter().all(|per_t| per_t[k][c].convergence_ok),
            });
        }
    }
    Ok(TimeAverage {
        method: choice.method(),
        times: times.to_vec(),
        tfs: tfs.to_vec(),
        per_metric_optimization: matches!(choice, ParamChoice::Grid { .. }),
        rows,
    })
}

/// `count` distinct testing months drawn uniformly from `[lo, hi]` with a
/// seeded ChaCha generator, returned in ascending order.
pub fn draw_testing_times(seed: u64, count: usize, lo: MonthStamp, hi: MonthStamp) -> Result<Vec<MonthStamp>> {
    if hi < lo {
        return Err(Error::InvalidParameter(format!("empty time range {lo}..{hi}")));
    }
    let span = (hi.value() - lo.value() + 1) as usize;
    if count == 0 || count > span {
        return Err(Error::InvalidParameter(format!(
            "cannot draw {count} distinct months from a range of {span}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picks: Vec<u32> = sample(&mut rng, span, count)
        .into_iter()
        .map(|i| lo.value() + i as u32)
        .collect();
    picks.sort_unstable();
    picks.into_iter().map(MonthStamp::new).collect()
}

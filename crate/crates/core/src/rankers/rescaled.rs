use rayon::prelude::*;

use super::{Method, RankerConfig, RescaleParams, ScoreVector};
use crate::error::{Error, Result};
use crate::snapshot::GraphSnapshot;

/// Population mean and standard deviation of a window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowStats {
    pub mean: f64,
    pub std: f64,
    /// Every member holds the same value, so the deviation is exactly zero.
    pub constant: bool,
}

impl WindowStats {
    /// `(value - mean) / std`, or 0 for a constant window.
    pub fn z(&self, value: f64) -> f64 {
        if self.constant || self.std == 0.0 {
            0.0
        } else {
            (value - self.mean) / self.std
        }
    }
}

/// Two-pass population statistics.
pub fn window_stats(values: &[f64]) -> WindowStats {
    let n = values.len() as f64;
    let first = values.first().copied().unwrap_or(0.0);
    let constant = values.iter().all(|&v| v == first);
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|&v| (v - mean) * (v - mean)).sum::<f64>() / n;
    WindowStats {
        mean,
        std: var.sqrt(),
        constant,
    }
}

/// Z-scores of `ordered` against clamped windows: position `i` is compared
/// with positions `max(0, i - half)..=min(len - 1, i + half)` where
/// `half = delta_p / 2`. Windows at the ends shrink rather than shift.
pub fn rescale_ordered(ordered: &[f64], delta_p: usize) -> Vec<f64> {
    let half = delta_p / 2;
    let n = ordered.len();
    let z_at = |i: usize| {
        let lo = i.saturating_sub(half);
        let hi = (i + half).min(n - 1);
        window_stats(&ordered[lo..=hi]).z(ordered[i])
    };
    (0..n).into_par_iter().map(z_at).collect()
}

/// Rescaled PageRank: each paper's PageRank as a z-score among papers of
/// similar age. Papers are ordered newest first by publication month, ties by
/// external id ascending, and compared within a window of `delta_p` papers.
pub fn rescaled_pagerank(
    snapshot: &GraphSnapshot<'_>,
    pr: &ScoreVector,
    params: &RescaleParams,
) -> Result<ScoreVector> {
    params.validate()?;
    let n = snapshot.len();
    if n < 2 {
        return Err(Error::TooFew { needed: 2, got: n });
    }
    if pr.len() != n {
        return Err(Error::LengthMismatch {
            left: pr.len(),
            right: n,
        });
    }
    let pr_params = match pr.params {
        RankerConfig::PageRank(p) => p,
        _ => {
            return Err(Error::InvalidParameter(format!(
                "rescaling expects PageRank scores, got `{}`",
                pr.method
            )))
        }
    };

    let ages = snapshot.ages();
    let mut order: Vec<usize> = (0..n).collect();
    // Newest first means smallest age first; index order is id order.
    order.sort_by(|&a, &b| ages[a].cmp(&ages[b]).then(a.cmp(&b)));
    let ordered: Vec<f64> = order.iter().map(|&i| pr.values[i]).collect();
    let z = rescale_ordered(&ordered, params.delta_p);
    let mut values = vec![0.0; n];
    for (pos, &i) in order.iter().enumerate() {
        values[i] = z[pos];
    }
    Ok(ScoreVector {
        values,
        method: Method::Rescaled,
        params: RankerConfig::Rescaled {
            pagerank: pr_params,
            rescale: *params,
        },
        converged: pr.converged,
        iterations: pr.iterations,
    })
}

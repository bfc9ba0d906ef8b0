//! Age-bias diagnostics for the real top papers: rank differences, detection
//! rate per age bin, age distributions and rank scatter data.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ranking::{rank_positions, top_count, top_n};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeltaR {
    pub node: usize,
    pub rank_predicted: usize,
    pub rank_real: usize,
    /// `ln(rank_predicted) - ln(rank_real)`; positive means the score
    /// underestimates the paper.
    pub delta: f64,
}

fn real_top(s: &[f64], f: &[f64], top_fraction: f64) -> Result<Vec<usize>> {
    if s.len() != f.len() {
        return Err(Error::LengthMismatch {
            left: s.len(),
            right: f.len(),
        });
    }
    if !(top_fraction > 0.0 && top_fraction <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "fraction must lie in (0, 1], got {top_fraction}"
        )));
    }
    let n = top_count(top_fraction, f.len());
    if n == 0 {
        return Err(Error::EmptyTopSet {
            fraction: top_fraction,
            total: f.len(),
        });
    }
    Ok(top_n(f, n))
}

/// Log rank difference for every paper in the real top set, best real rank first.
pub fn delta_r(s: &[f64], f: &[f64], top_fraction: f64) -> Result<Vec<DeltaR>> {
    let top = real_top(s, f, top_fraction)?;
    let pred = rank_positions(s);
    Ok(top
        .into_iter()
        .enumerate()
        .map(|(r, node)| {
            let rank_real = r + 1;
            let rank_predicted = pred[node];
            DeltaR {
                node,
                rank_predicted,
                rank_real,
                delta: (rank_predicted as f64).ln() - (rank_real as f64).ln(),
            }
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgeBin {
    /// Inclusive lower age bound in months.
    pub lo: u32,
    /// Exclusive upper bound.
    pub hi: u32,
    /// Real top papers in this bin.
    pub count: usize,
    /// Of those, papers also in the predicted top set.
    pub detected: usize,
    /// `None` for an empty bin.
    pub rate: Option<f64>,
    pub mean_delta_r: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgeBinStats {
    pub bin_width: u32,
    pub n_top: usize,
    pub bins: Vec<AgeBin>,
}

impl AgeBinStats {
    pub fn total_detected(&self) -> usize {
        self.bins.iter().map(|b| b.detected).sum()
    }

    /// Mean over non-empty bins of `|mean Δr|`.
    pub fn mean_abs_delta_r(&self) -> Option<f64> {
        let vals: Vec<f64> = self.bins.iter().filter_map(|b| b.mean_delta_r).map(f64::abs).collect();
        (!vals.is_empty()).then(|| vals.iter().sum::<f64>() / vals.len() as f64)
    }
}

/// Splits the real top set into age bins of `bin_width` months covering
/// `[0, max age]` and reports, per bin, the fraction also found in the
/// predicted top set and the mean Δr.
pub fn detection_rate_by_age(
    s: &[f64],
    f: &[f64],
    ages: &[u32],
    top_fraction: f64,
    bin_width: u32,
) -> Result<AgeBinStats> {
    if bin_width == 0 {
        return Err(Error::InvalidParameter("bin width must be positive".into()));
    }
    if ages.len() != s.len() {
        return Err(Error::LengthMismatch {
            left: ages.len(),
            right: s.len(),
        });
    }
    let deltas = delta_r(s, f, top_fraction)?;
    let n_top = deltas.len();
    let mut predicted = vec![false; s.len()];
    for i in top_n(s, n_top) {
        predicted[i] = true;
    }
    let max_age = ages.iter().copied().max().unwrap_or(0);
    let n_bins = (max_age / bin_width + 1) as usize;
    let mut count = vec![0usize; n_bins];
    let mut detected = vec![0usize; n_bins];
    let mut dsum = vec![0.0f64; n_bins];
    for d in &deltas {
        let b = (ages[d.node] / bin_width) as usize;
        count[b] += 1;
        dsum[b] += d.delta;
        if predicted[d.node] {
            detected[b] += 1;
        }
    }
    let bins = (0..n_bins)
        .map(|b| {
            let lo = b as u32 * bin_width;
            AgeBin {
                lo,
                hi: lo + bin_width,
                count: count[b],
                detected: detected[b],
                rate: (count[b] > 0).then(|| detected[b] as f64 / count[b] as f64),
                mean_delta_r: (count[b] > 0).then(|| dsum[b] / count[b] as f64),
            }
        })
        .collect();
    Ok(AgeBinStats { bin_width, n_top, bins })
}

/// Survival curve `P(age >= x)` of a set of ages, sampled at `x = 0, w, 2w, ...`
/// up to the first edge beyond the oldest age (where it reaches 0).
pub fn cumulative_age_distribution(ages: &[u32], bin_width: u32) -> Result<Vec<(u32, f64)>> {
    if ages.is_empty() {
        return Err(Error::TooFew { needed: 1, got: 0 });
    }
    if bin_width == 0 {
        return Err(Error::InvalidParameter("bin width must be positive".into()));
    }
    let n = ages.len() as f64;
    let mut sorted = ages.to_vec();
    sorted.sort_unstable();
    let max = *sorted.last().unwrap();
    let mut curve = Vec::new();
    let mut x = 0u32;
    loop {
        let below = sorted.partition_point(|&a| a < x);
        let frac = (sorted.len() - below) as f64 / n;
        curve.push((x, frac));
        if x > max {
            break;
        }
        x += bin_width;
    }
    Ok(curve)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScatterPoint {
    pub node: usize,
    pub rank_reference: usize,
    pub rank_other: usize,
}

/// Ranks of the real top papers under a reference score and another score.
pub fn ranking_scatter(reference: &[f64], other: &[f64], f: &[f64], top_fraction: f64) -> Result<Vec<ScatterPoint>> {
    if other.len() != reference.len() {
        return Err(Error::LengthMismatch {
            left: other.len(),
            right: reference.len(),
        });
    }
    let top = real_top(reference, f, top_fraction)?;
    let rr = rank_positions(reference);
    let ro = rank_positions(other);
    Ok(top
        .into_iter()
        .map(|node| ScatterPoint {
            node,
            rank_reference: rr[node],
            rank_other: ro[node],
        })
        .collect())
}

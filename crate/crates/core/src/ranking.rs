//! The total order used everywhere a list of scores becomes a ranking:
//! value descending, then external id ascending.
//!
//! Snapshot and graph nodes are indexed in ascending external-id order, so
//! the id tie-break is the same as an index tie-break.

use std::cmp::Ordering;

#[inline]
fn cmp_desc(values: &[f64], a: usize, b: usize) -> Ordering {
    values[b].total_cmp(&values[a]).then(a.cmp(&b))
}

/// Node indices from best to worst.
pub fn order_desc(values: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_unstable_by(|&a, &b| cmp_desc(values, a, b));
    idx
}

/// 1-based rank of every node under the total order.
pub fn rank_positions(values: &[f64]) -> Vec<usize> {
    let mut pos = vec![0usize; values.len()];
    for (r, i) in order_desc(values).into_iter().enumerate() {
        pos[i] = r + 1;
    }
    pos
}

/// Indices of the best `n` nodes, best first.
pub fn top_n(values: &[f64], n: usize) -> Vec<usize> {
    let n = n.min(values.len());
    if n == 0 {
        return Vec::new();
    }
    let mut idx: Vec<usize> = (0..values.len()).collect();
    if n < idx.len() {
        idx.select_nth_unstable_by(n - 1, |&a, &b| cmp_desc(values, a, b));
        idx.truncate(n);
    }
    idx.sort_unstable_by(|&a, &b| cmp_desc(values, a, b));
    idx
}

/// `floor(fraction * total)`, the top-set size used by precision and the
/// age-bias diagnostics.
pub fn top_count(fraction: f64, total: usize) -> usize {
    (fraction * total as f64).floor() as usize
}

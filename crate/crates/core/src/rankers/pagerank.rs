use super::series::transfer_pull;
use super::{Method, PageRankParams, RankerConfig, ScoreVector};
use crate::error::Result;
use crate::snapshot::GraphSnapshot;

/// Power iteration for PageRank on the snapshot's citation direction.
///
/// A paper passes `c / k_out` of its score to each reference. Papers without
/// references spread `c` times their score uniformly over all `N` papers, and
/// every paper receives the teleport term `(1 - c) / N`. Starts from the
/// uniform vector and stops when the L1 change drops below `tol`; the result
/// is renormalized to sum to one.
pub fn pagerank(snapshot: &GraphSnapshot<'_>, params: &PageRankParams) -> Result<ScoreVector> {
    params.validate()?;
    let n = snapshot.len();
    let nf = n as f64;
    let c = params.c;
    let inv_out: Vec<f64> = (0..n)
        .map(|j| match snapshot.out_degree(j) {
            0 => 0.0,
            k => 1.0 / k as f64,
        })
        .collect();
    let dangling: Vec<usize> = (0..n).filter(|&j| snapshot.out_degree(j) == 0).collect();

    let mut x = vec![1.0 / nf; n];
    let mut next = vec![0.0; n];
    let mut converged = false;
    let mut iterations = 0;
    while iterations < params.max_iter {
        iterations += 1;
        let dangling_mass: f64 = dangling.iter().map(|&j| x[j]).sum();
        let base = c * dangling_mass / nf + (1.0 - c) / nf;
        transfer_pull(snapshot.reverse(), &inv_out, &x, &mut next);
        let mut diff = 0.0;
        for (nx, &ox) in next.iter_mut().zip(&x) {
            *nx = c * *nx + base;
            diff += (*nx - ox).abs();
        }
        std::mem::swap(&mut x, &mut next);
        if diff < params.tol {
            converged = true;
            break;
        }
    }
    let total: f64 = x.iter().sum();
    for v in x.iter_mut() {
        *v /= total;
    }
    Ok(ScoreVector {
        values: x,
        method: Method::PageRank,
        params: RankerConfig::PageRank(*params),
        converged,
        iterations,
    })
}

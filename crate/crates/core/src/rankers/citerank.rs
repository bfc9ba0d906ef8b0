use super::seed::seed_values;
use super::series::run_series;
use super::{CiteRankParams, Method, RankerConfig, ScoreVector};
use crate::error::Result;
use crate::snapshot::GraphSnapshot;

/// CiteRank traffic: `rho + alpha W rho + alpha^2 W^2 rho + ...` where a paper
/// splits its traffic evenly over its references. Papers without references
/// absorb what reaches them.
pub fn citerank(snapshot: &GraphSnapshot<'_>, params: &CiteRankParams) -> Result<ScoreVector> {
    citerank_observed(snapshot, params, |_| {})
}

pub(crate) fn citerank_observed(
    snapshot: &GraphSnapshot<'_>,
    params: &CiteRankParams,
    observe: impl FnMut(&[f64]),
) -> Result<ScoreVector> {
    params.validate()?;
    let n = snapshot.len();
    let weight: Vec<f64> = (0..n)
        .map(|j| match snapshot.out_degree(j) {
            0 => 0.0,
            k => 1.0 / k as f64,
        })
        .collect();
    let seed = seed_values(snapshot.ages(), params.tau);
    let alpha = params.alpha;
    let out = run_series(
        snapshot.reverse(),
        &weight,
        seed,
        |_| alpha,
        params.tol,
        params.max_terms,
        observe,
    );
    Ok(ScoreVector {
        values: out.values,
        method: Method::CiteRank,
        params: RankerConfig::CiteRank(*params),
        converged: out.converged,
        iterations: out.terms,
    })
}

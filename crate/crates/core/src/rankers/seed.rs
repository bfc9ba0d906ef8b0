use super::{check_tau, Method, RankerConfig, ScoreVector};
use crate::error::Result;
use crate::snapshot::GraphSnapshot;

/// `exp(-age / tau)` per paper. Left unnormalized.
pub fn seed_vector(snapshot: &GraphSnapshot<'_>, tau: f64) -> Result<ScoreVector> {
    check_tau(tau)?;
    Ok(ScoreVector {
        values: seed_values(snapshot.ages(), tau),
        method: Method::Seed,
        params: RankerConfig::Seed { tau },
        converged: true,
        iterations: 0,
    })
}

pub(crate) fn seed_values(ages: &[u32], tau: f64) -> Vec<f64> {
    ages.iter().map(|&a| (-(a as f64) / tau).exp()).collect()
}

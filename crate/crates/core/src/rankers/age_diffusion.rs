use super::seed::seed_values;
use super::series::run_series;
use super::{AgeDiffusionParams, Method, RankerConfig, ScoreVector};
use crate::error::Result;
use crate::snapshot::GraphSnapshot;

/// Age-based diffusion score.
///
/// Every citing paper `j` passes its whole current score, damped by
/// `exp(-age_j / tau)`, to each of its references (no division by the number
/// of references). Step `k` of the walk is followed with probability
/// `alpha / base^(k-1)`, so the coefficient of `W^k rho` is the running product
/// `alpha^k / base^(k(k-1)/2)`. That product decays faster than any geometric
/// sequence, which keeps the series finite although `W` is not stochastic.
pub fn age_diffusion(snapshot: &GraphSnapshot<'_>, params: &AgeDiffusionParams) -> Result<ScoreVector> {
    age_diffusion_observed(snapshot, params, |_| {})
}

pub(crate) fn age_diffusion_observed(
    snapshot: &GraphSnapshot<'_>,
    params: &AgeDiffusionParams,
    observe: impl FnMut(&[f64]),
) -> Result<ScoreVector> {
    params.validate()?;
    // The edge weight of citer j equals its seed value.
    let seed = seed_values(snapshot.ages(), params.tau);
    let weight = seed.clone();
    let (alpha, base) = (params.alpha, params.step_decay_base);
    let step = |k: usize| alpha / base.powi(k as i32 - 1);
    let out = run_series(
        snapshot.reverse(),
        &weight,
        seed,
        step,
        params.tol,
        params.max_terms,
        observe,
    );
    Ok(ScoreVector {
        values: out.values,
        method: Method::AgeDiffusion,
        params: RankerConfig::AgeDiffusion(*params),
        converged: out.converged,
        iterations: out.terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rankers::testutil::{graph, month};
    use crate::snapshot::snapshot;

    #[test]
    fn two_node_example() {
        let g = graph(&[("A", 0), ("B", 12)], &[("B", "A")]);
        let s = snapshot(&g, month(12), false).unwrap();
        let ad = age_diffusion(&s, &AgeDiffusionParams::new(12.0, 0.5)).unwrap();
        assert!((ad.values[0] - 0.867_879_441_171_442_3).abs() < 1e-12);
        assert_eq!(ad.values[1], 1.0);
    }

    #[test]
    fn star_gives_full_increment() {
        let g = graph(&[("A", 0), ("B", 0), ("C", 0)], &[("C", "A"), ("C", "B")]);
        let s = snapshot(&g, month(0), false).unwrap();
        let ad = age_diffusion(&s, &AgeDiffusionParams::new(12.0, 0.5)).unwrap();
        assert_eq!(ad.values, vec![1.5, 1.5, 1.0]);
    }

    #[test]
    fn step_decay_is_cumulative() {
        // Chain D -> C -> B -> A, all age 0: the depth-k term carries
        // alpha^k / 10^(k(k-1)/2).
        let g = graph(
            &[("A", 0), ("B", 0), ("C", 0), ("D", 0)],
            &[("D", "C"), ("C", "B"), ("B", "A")],
        );
        let s = snapshot(&g, month(0), false).unwrap();
        let a = 0.5;
        let ad = age_diffusion(&s, &AgeDiffusionParams::new(12.0, a)).unwrap();
        let expect_a = 1.0 + a + a * a / 10.0 + a * a * a / 1000.0;
        assert!((ad.values[0] - expect_a).abs() < 1e-15);
        assert_eq!(ad.iterations, 4);
    }

    #[test]
    fn zero_alpha_is_seed() {
        let g = graph(&[("A", 0), ("B", 7)], &[("B", "A")]);
        let s = snapshot(&g, month(9), false).unwrap();
        let ad = age_diffusion(&s, &AgeDiffusionParams::new(24.0, 0.0)).unwrap();
        assert_eq!(ad.values, seed_values(s.ages(), 24.0));
    }
}

//! Sparse transfer products and truncated diffusion series shared by CiteRank
//! and the age-based diffusion model.

use rayon::prelude::*;

use crate::graph::Csr;

/// Below this many rows the pull product runs serially.
const PAR_THRESHOLD: usize = 1 << 14;

/// `out[i] = sum over citers j of i of weight[j] * x[j]`.
///
/// `citers` is the reverse adjacency. Each row is summed in adjacency order
/// whether or not the rows are spread over threads, so the result does not
/// depend on the thread count.
pub fn transfer_pull(citers: &Csr, weight: &[f64], x: &[f64], out: &mut [f64]) {
    let row = |i: usize| -> f64 {
        let mut acc = 0.0;
        for &j in citers.row(i) {
            let j = j as usize;
            acc += weight[j] * x[j];
        }
        acc
    };
    if out.len() >= PAR_THRESHOLD {
        out.par_iter_mut().enumerate().for_each(|(i, o)| *o = row(i));
    } else {
        for (i, o) in out.iter_mut().enumerate() {
            *o = row(i);
        }
    }
}

pub(crate) struct SeriesOutcome {
    pub values: Vec<f64>,
    pub terms: usize,
    pub converged: bool,
}

fn l1(v: &[f64]) -> f64 {
    v.iter().map(|x| x.abs()).sum()
}

/// Accumulates `seed + sum_k coef(k) * (W^k seed)` where `coef(k)` is the
/// scalar multiplying step `k` relative to step `k - 1`.
///
/// Stops once a term's L1 mass drops below `tol` times the accumulated mass,
/// or the term vanishes. Hitting `max_terms` first clears `converged`.
/// `observe` sees every partial sum, starting with the seed.
pub(crate) fn run_series(
    citers: &Csr,
    weight: &[f64],
    seed: Vec<f64>,
    step_coef: impl Fn(usize) -> f64,
    tol: f64,
    max_terms: usize,
    mut observe: impl FnMut(&[f64]),
) -> SeriesOutcome {
    let n = seed.len();
    let mut acc = seed.clone();
    observe(&acc);
    let mut term = seed;
    let mut next = vec![0.0; n];
    for k in 1..=max_terms {
        let coef = step_coef(k);
        if coef == 0.0 {
            return SeriesOutcome {
                values: acc,
                terms: k - 1,
                converged: true,
            };
        }
        transfer_pull(citers, weight, &term, &mut next);
        for v in next.iter_mut() {
            *v *= coef;
        }
        std::mem::swap(&mut term, &mut next);
        for (a, t) in acc.iter_mut().zip(&term) {
            *a += t;
        }
        observe(&acc);
        let mass = l1(&term);
        if mass == 0.0 || mass < tol * l1(&acc) {
            return SeriesOutcome {
                values: acc,
                terms: k,
                converged: true,
            };
        }
    }
    SeriesOutcome {
        values: acc,
        terms: max_terms,
        converged: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // 0 <- 1 <- 2, plus 2 -> 0.
    fn small() -> Csr {
        let (_, rev) = Csr::pair_from_edges(3, vec![(1, 0), (2, 1), (2, 0)]);
        rev
    }

    #[test]
    fn pull_product() {
        let rev = small();
        let w = [1.0, 2.0, 3.0];
        let x = [1.0, 1.0, 1.0];
        let mut out = [0.0; 3];
        transfer_pull(&rev, &w, &x, &mut out);
        assert_eq!(out, [2.0 + 3.0, 3.0, 0.0]);
    }

    #[test]
    fn parallel_matches_serial() {
        let n = PAR_THRESHOLD + 1000;
        let pairs: Vec<(u32, u32)> = (1..n as u32)
            .flat_map(|i| [(i, i / 2), (i, (i * 7) % i)])
            .filter(|&(a, b)| a != b)
            .collect();
        let (_, rev) = Csr::pair_from_edges(n, pairs);
        let w: Vec<f64> = (0..n).map(|i| 1.0 / (1.0 + i as f64)).collect();
        let x: Vec<f64> = (0..n).map(|i| ((i * 31) % 17) as f64 * 0.1).collect();
        let mut par = vec![0.0; n];
        transfer_pull(&rev, &w, &x, &mut par);
        let mut serial = vec![0.0; n];
        for (i, o) in serial.iter_mut().enumerate() {
            *o = rev
                .row(i)
                .iter()
                .map(|&j| w[j as usize] * x[j as usize])
                .fold(0.0, |a, b| a + b);
        }
        for (a, b) in par.iter().zip(&serial) {
            assert!((a - b).abs() <= 1e-12 * b.abs().max(1e-300), "{a} vs {b}");
        }
        assert_eq!(par, serial);
    }

    #[test]
    fn dag_series_terminates_exactly() {
        let rev = small();
        let out = run_series(&rev, &[1.0; 3], vec![1.0; 3], |_| 0.5, 1e-12, 100, |_| {});
        assert!(out.converged);
        assert_eq!(out.terms, 3);
        // node 0: 1 + 0.5*(1+1) + 0.25*(1 via 2->1->0) = 2.25
        assert_eq!(out.values, vec![2.25, 1.5, 1.0]);
    }

    #[test]
    fn cap_clears_converged() {
        // 2-cycle never empties
        let (_, rev) = Csr::pair_from_edges(2, vec![(0, 1), (1, 0)]);
        let out = run_series(&rev, &[1.0; 2], vec![1.0; 2], |_| 0.9, 1e-12, 5, |_| {});
        assert!(!out.converged);
        assert_eq!(out.terms, 5);
    }
}

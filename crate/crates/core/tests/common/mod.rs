//! Random small citation DAGs and dense reference solutions built straight
//! from the raw edge lists, independent of the sparse code paths.

#![allow(dead_code)]

use citepop_core::synth::{generate, SynthParams};
use citepop_core::{build_graph, CitationGraph, MonthStamp, PaperRecord};
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct RandomDag {
    pub ids: Vec<String>,
    pub months: Vec<u32>,
    /// `(citing, cited)` index pairs into `ids`.
    pub edges: Vec<(usize, usize)>,
    pub graph: CitationGraph,
    pub t: MonthStamp,
}

impl RandomDag {
    pub fn n(&self) -> usize {
        self.ids.len()
    }

    /// Dense position of `ids[i]` inside the graph (and an unfiltered snapshot at `t`).
    pub fn dense(&self, i: usize) -> usize {
        self.graph.node_index(&self.ids[i]).unwrap()
    }

    pub fn out_degree(&self) -> Vec<usize> {
        let mut k = vec![0; self.n()];
        for &(a, _) in &self.edges {
            k[a] += 1;
        }
        k
    }

    pub fn ages(&self) -> Vec<f64> {
        self.months.iter().map(|&m| (self.t.value() - m) as f64).collect()
    }

    /// Reorders an oracle vector indexed like `ids` into graph order.
    pub fn to_graph_order(&self, v: &DVector<f64>) -> Vec<f64> {
        let mut out = vec![0.0; self.n()];
        for i in 0..self.n() {
            out[self.dense(i)] = v[i];
        }
        out
    }
}

/// A DAG with up to `max_n` nodes: a random topological order with
/// non-decreasing months along it, and each backward pair linked with a
/// random density.
pub fn random_dag(seed: u64, max_n: usize) -> RandomDag {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(1..=max_n);
    let p: f64 = rng.random_range(0.02..0.4);
    let mut months: Vec<u32> = (0..n).map(|_| rng.random_range(0..120)).collect();
    months.sort_unstable();
    // Ids are shuffled relative to the topological order.
    let mut labels: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        labels.swap(i, j);
    }
    let ids: Vec<String> = labels.iter().map(|l| format!("P{l:03}")).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..i {
            if rng.random_bool(p) {
                edges.push((i, j));
            }
        }
    }
    dag_from_parts(ids, months, edges)
}

/// Builds the graph for explicit parts; `t` is the latest month.
pub fn dag_from_parts(ids: Vec<String>, months: Vec<u32>, edges: Vec<(usize, usize)>) -> RandomDag {
    let records: Vec<PaperRecord> = (0..ids.len())
        .map(|i| PaperRecord::new(ids[i].clone(), MonthStamp::new(months[i]).unwrap()))
        .collect();
    let graph = build_graph(&records, edges.iter().map(|&(a, b)| (ids[a].as_str(), ids[b].as_str()))).unwrap();
    let t = MonthStamp::new(*months.iter().max().unwrap()).unwrap();
    RandomDag {
        ids,
        months,
        edges,
        graph,
        t,
    }
}

/// Dense solve of the PageRank fixed point with uniform dangling spread and
/// the sum-to-one constraint.
pub fn dense_pagerank(dag: &RandomDag, c: f64) -> DVector<f64> {
    let n = dag.n();
    let nf = n as f64;
    let k = dag.out_degree();
    let mut m = DMatrix::<f64>::zeros(n, n);
    for &(j, i) in &dag.edges {
        m[(i, j)] += 1.0 / k[j] as f64;
    }
    for j in 0..n {
        if k[j] == 0 {
            for i in 0..n {
                m[(i, j)] += 1.0 / nf;
            }
        }
    }
    let a = DMatrix::<f64>::identity(n, n) - m * c;
    let b = DVector::<f64>::from_element(n, (1.0 - c) / nf);
    let s = a.lu().solve(&b).expect("nonsingular");
    let total = s.sum();
    s / total
}

pub fn dense_seed(dag: &RandomDag, tau: f64) -> DVector<f64> {
    DVector::from_iterator(dag.n(), dag.ages().into_iter().map(|a| (-a / tau).exp()))
}

/// `w_ij = 1 / k_j` when `j` cites `i`.
pub fn dense_citerank_w(dag: &RandomDag) -> DMatrix<f64> {
    let k = dag.out_degree();
    let mut w = DMatrix::<f64>::zeros(dag.n(), dag.n());
    for &(j, i) in &dag.edges {
        w[(i, j)] = 1.0 / k[j] as f64;
    }
    w
}

/// `(I - alpha W)^-1 rho`.
pub fn dense_citerank(dag: &RandomDag, tau: f64, alpha: f64) -> DVector<f64> {
    let n = dag.n();
    let a = DMatrix::<f64>::identity(n, n) - dense_citerank_w(dag) * alpha;
    a.lu().solve(&dense_seed(dag, tau)).expect("nonsingular")
}

/// `w_ij = exp(-age_j / tau)` when `j` cites `i`.
pub fn dense_ad_w(dag: &RandomDag, tau: f64) -> DMatrix<f64> {
    let ages = dag.ages();
    let mut w = DMatrix::<f64>::zeros(dag.n(), dag.n());
    for &(j, i) in &dag.edges {
        w[(i, j)] = (-ages[j] / tau).exp();
    }
    w
}

/// Step coefficients `prod_{i=1..k} alpha / base^(i-1)` for k = 0..=terms.
pub fn ad_coefficients(alpha: f64, base: f64, terms: usize) -> Vec<f64> {
    let mut coef = vec![1.0];
    for k in 1..=terms {
        let step = alpha / base.powi(k as i32 - 1);
        coef.push(coef[k - 1] * step);
    }
    coef
}

/// `sum_{k=0..terms} coef_k W^k rho` by repeated dense products.
pub fn dense_ad_series(dag: &RandomDag, tau: f64, alpha: f64, terms: usize) -> DVector<f64> {
    let w = dense_ad_w(dag, tau);
    let coef = ad_coefficients(alpha, 10.0, terms);
    let mut term = dense_seed(dag, tau);
    let mut s = DVector::<f64>::zeros(dag.n());
    for c in coef {
        s += &term * c;
        term = &w * &term;
    }
    s
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// The synthetic corpus used by the directional checks.
pub fn synthetic_corpus(seed: u64) -> (CitationGraph, SynthParams) {
    let params = SynthParams {
        n_papers: 5000,
        refs_per_paper: 10,
        theta: 24.0,
        seed,
        ..SynthParams::default()
    };
    let c = generate(&params).unwrap();
    let g = build_graph(&c.records, c.edges.iter().map(|(a, b)| (a.as_str(), b.as_str()))).unwrap();
    (g, params)
}

/// Testing time at 80% of the timeline and a window of 20% of what remains.
pub fn synthetic_times(params: &SynthParams) -> (MonthStamp, u32) {
    let start = params.start.value();
    let last = params.last_month().value();
    let t = start + (0.8 * (last - start) as f64).floor() as u32;
    let tf = ((0.2 * (last - t) as f64).floor() as u32).max(1);
    (MonthStamp::new(t).unwrap(), tf)
}

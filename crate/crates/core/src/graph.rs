//! Immutable citation graph with compressed forward and reverse adjacency.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::month::MonthStamp;

/// One paper: external identifier plus publication month.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PaperRecord {
    pub external_id: String,
    pub pub_month: MonthStamp,
}

impl PaperRecord {
    pub fn new(external_id: impl Into<String>, pub_month: MonthStamp) -> Self {
        Self {
            external_id: external_id.into(),
            pub_month,
        }
    }
}

/// Compressed sparse row adjacency: the neighbours of node `v` are
/// `targets[offsets[v]..offsets[v + 1]]`, sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Csr {
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl Csr {
    /// Builds from `(row, col)` pairs that are already sorted and deduplicated.
    pub(crate) fn from_sorted_pairs(n: usize, pairs: &[(u32, u32)]) -> Self {
        let mut offsets = vec![0usize; n + 1];
        for &(r, _) in pairs {
            offsets[r as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let targets = pairs.iter().map(|&(_, c)| c).collect();
        Self { offsets, targets }
    }

    /// Builds the CSR for `pairs` and for their transpose.
    pub(crate) fn pair_from_edges(n: usize, mut pairs: Vec<(u32, u32)>) -> (Self, Self) {
        pairs.sort_unstable();
        pairs.dedup();
        let forward = Self::from_sorted_pairs(n, &pairs);
        let mut rev: Vec<(u32, u32)> = pairs.iter().map(|&(a, b)| (b, a)).collect();
        rev.sort_unstable();
        let reverse = Self::from_sorted_pairs(n, &rev);
        (forward, reverse)
    }

    pub fn n_rows(&self) -> usize {
        self.offsets.len().saturating_sub(1)
    }

    pub fn n_entries(&self) -> usize {
        self.targets.len()
    }

    #[inline]
    pub fn row(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn targets(&self) -> &[u32] {
        &self.targets
    }
}

/// Counters for edges silently dropped by [`build_graph`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildReport {
    pub self_loops: usize,
    pub duplicates: usize,
}

/// Directed citation network; an edge `i -> j` means paper `i` cites `j`.
///
/// Nodes are indexed densely in ascending external-id order, so comparing node
/// indices is the same as comparing external ids.
#[derive(Debug, Clone)]
pub struct CitationGraph {
    ids: Vec<String>,
    index: HashMap<String, u32>,
    pub_month: Vec<MonthStamp>,
    forward: Csr,
    reverse: Csr,
    report: BuildReport,
}

impl CitationGraph {
    pub fn n_nodes(&self) -> usize {
        self.ids.len()
    }

    pub fn n_edges(&self) -> usize {
        self.forward.n_entries()
    }

    pub fn external_id(&self, v: usize) -> &str {
        &self.ids[v]
    }

    pub fn external_ids(&self) -> &[String] {
        &self.ids
    }

    pub fn node_index(&self, external_id: &str) -> Option<usize> {
        self.index.get(external_id).map(|&v| v as usize)
    }

    pub fn pub_month(&self, v: usize) -> MonthStamp {
        self.pub_month[v]
    }

    pub fn pub_months(&self) -> &[MonthStamp] {
        &self.pub_month
    }

    /// Papers referenced by `v`.
    pub fn references(&self, v: usize) -> &[u32] {
        self.forward.row(v)
    }

    /// Papers citing `v`.
    pub fn citers(&self, v: usize) -> &[u32] {
        self.reverse.row(v)
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.forward.degree(v)
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.reverse.degree(v)
    }

    pub fn forward(&self) -> &Csr {
        &self.forward
    }

    pub fn reverse(&self) -> &Csr {
        &self.reverse
    }

    pub fn build_report(&self) -> BuildReport {
        self.report
    }

    pub fn first_month(&self) -> Option<MonthStamp> {
        self.pub_month.iter().copied().min()
    }

    pub fn last_month(&self) -> Option<MonthStamp> {
        self.pub_month.iter().copied().max()
    }
}

/// Builds a graph from paper records and `(citing, cited)` external-id pairs.
///
/// Self-loops and repeated edges are dropped and counted in the
/// [`BuildReport`]. Unknown endpoints and duplicate paper ids are errors.
pub fn build_graph<I, A, B>(records: &[PaperRecord], edges: I) -> Result<CitationGraph>
where
    I: IntoIterator<Item = (A, B)>,
    A: AsRef<str>,
    B: AsRef<str>,
{
    let mut order: Vec<usize> = (0..records.len()).collect();
    order.sort_unstable_by(|&a, &b| records[a].external_id.cmp(&records[b].external_id));

    let mut ids = Vec::with_capacity(records.len());
    let mut pub_month = Vec::with_capacity(records.len());
    let mut index = HashMap::with_capacity(records.len());
    for (dense, &r) in order.iter().enumerate() {
        let rec = &records[r];
        if rec.external_id.is_empty() {
            return Err(Error::InvalidParameter("empty paper id".into()));
        }
        if index.insert(rec.external_id.clone(), dense as u32).is_some() {
            return Err(Error::DuplicatePaper(rec.external_id.clone()));
        }
        ids.push(rec.external_id.clone());
        pub_month.push(rec.pub_month);
    }

    let mut report = BuildReport::default();
    let mut pairs = Vec::new();
    for (citing, cited) in edges {
        let (citing, cited) = (citing.as_ref(), cited.as_ref());
        let (Some(&a), Some(&b)) = (index.get(citing), index.get(cited)) else {
            return Err(Error::UnknownEndpoint {
                citing: citing.to_string(),
                cited: cited.to_string(),
            });
        };
        if a == b {
            report.self_loops += 1;
            continue;
        }
        pairs.push((a, b));
    }
    let raw = pairs.len();
    let (forward, reverse) = Csr::pair_from_edges(ids.len(), pairs);
    report.duplicates = raw - forward.n_entries();

    Ok(CitationGraph {
        ids,
        index,
        pub_month,
        forward,
        reverse,
        report,
    })
}

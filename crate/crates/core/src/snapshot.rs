//! Training view of a citation graph at a testing time.

use crate::error::{Error, Result};
use crate::graph::{CitationGraph, Csr};
use crate::month::MonthStamp;

/// Papers published up to `t` (optionally dropping those without any
/// citation), re-indexed densely in ascending external-id order.
#[derive(Debug, Clone)]
pub struct GraphSnapshot<'g> {
    parent: &'g CitationGraph,
    t: MonthStamp,
    nodes: Vec<u32>,
    age: Vec<u32>,
    forward: Csr,
    reverse: Csr,
}

impl<'g> GraphSnapshot<'g> {
    /// Restricts to papers with `pub_month <= t`, then, when `filter_uncited`
    /// is set, removes papers with no citers inside that window in a single
    /// pass. Papers whose in-degree drops to zero because of the removal stay.
    pub fn build(graph: &'g CitationGraph, t: MonthStamp, filter_uncited: bool) -> Result<Self> {
        let n = graph.n_nodes();
        let mut keep: Vec<bool> = (0..n).map(|v| graph.pub_month(v) <= t).collect();
        if filter_uncited {
            let cited: Vec<bool> = (0..n)
                .map(|v| keep[v] && graph.citers(v).iter().any(|&u| keep[u as usize]))
                .collect();
            keep = cited;
        }

        let nodes: Vec<u32> = (0..n as u32).filter(|&v| keep[v as usize]).collect();
        if nodes.is_empty() {
            return Err(Error::EmptySnapshot(t.value()));
        }
        let mut local = vec![u32::MAX; n];
        for (i, &v) in nodes.iter().enumerate() {
            local[v as usize] = i as u32;
        }
        let mut pairs = Vec::new();
        for (i, &v) in nodes.iter().enumerate() {
            for &u in graph.references(v as usize) {
                let j = local[u as usize];
                if j != u32::MAX {
                    pairs.push((i as u32, j));
                }
            }
        }
        let (forward, reverse) = Csr::pair_from_edges(nodes.len(), pairs);
        let age = nodes
            .iter()
            .map(|&v| t.months_since(graph.pub_month(v as usize)) as u32)
            .collect();

        Ok(Self {
            parent: graph,
            t,
            nodes,
            age,
            forward,
            reverse,
        })
    }

    pub fn parent(&self) -> &'g CitationGraph {
        self.parent
    }

    pub fn t(&self) -> MonthStamp {
        self.t
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn n_edges(&self) -> usize {
        self.forward.n_entries()
    }

    /// Parent-graph index of snapshot node `i`.
    pub fn parent_index(&self, i: usize) -> usize {
        self.nodes[i] as usize
    }

    pub fn parent_indices(&self) -> &[u32] {
        &self.nodes
    }

    pub fn external_id(&self, i: usize) -> &'g str {
        self.parent.external_id(self.nodes[i] as usize)
    }

    pub fn pub_month(&self, i: usize) -> MonthStamp {
        self.parent.pub_month(self.nodes[i] as usize)
    }

    /// `t - pub_month` in months.
    pub fn ages(&self) -> &[u32] {
        &self.age
    }

    pub fn references(&self, i: usize) -> &[u32] {
        self.forward.row(i)
    }

    pub fn citers(&self, i: usize) -> &[u32] {
        self.reverse.row(i)
    }

    pub fn out_degree(&self, i: usize) -> usize {
        self.forward.degree(i)
    }

    pub fn in_degree(&self, i: usize) -> usize {
        self.reverse.degree(i)
    }

    pub fn forward(&self) -> &Csr {
        &self.forward
    }

    pub fn reverse(&self) -> &Csr {
        &self.reverse
    }
}

/// Convenience wrapper for [`GraphSnapshot::build`].
pub fn snapshot(graph: &CitationGraph, t: MonthStamp, filter_uncited: bool) -> Result<GraphSnapshot<'_>> {
    GraphSnapshot::build(graph, t, filter_uncited)
}

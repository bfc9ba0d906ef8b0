use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::CitationGraph;
use crate::month::MonthStamp;
use crate::snapshot::GraphSnapshot;

/// Citations each snapshot paper gains in `(t, t + tf]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuturePopularity {
    pub values: Vec<u32>,
    pub t: MonthStamp,
    pub tf: u32,
}

impl FuturePopularity {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn as_f64(&self) -> Vec<f64> {
        self.values.iter().map(|&v| v as f64).collect()
    }

    pub fn total(&self) -> u64 {
        self.values.iter().map(|&v| v as u64).sum()
    }
}

/// Counts, for every paper in `snapshot`, the citing papers of the full graph
/// published in the half-open window `(t, t + tf]`. Papers published inside
/// the window are never scored, they only count as citers.
pub fn future_popularity(graph: &CitationGraph, snapshot: &GraphSnapshot<'_>, tf: u32) -> Result<FuturePopularity> {
    if tf == 0 {
        return Err(Error::InvalidParameter("future window T_f must be positive".into()));
    }
    if !std::ptr::eq(graph, snapshot.parent()) {
        return Err(Error::InvalidParameter("snapshot was not built from this graph".into()));
    }
    let t = snapshot.t();
    let end = t.value() + tf;
    let last = graph.last_month().map_or(0, MonthStamp::value);
    if end > last {
        return Err(Error::WindowBeyondCorpus { end, last });
    }
    let values = snapshot
        .parent_indices()
        .iter()
        .map(|&v| {
            graph
                .citers(v as usize)
                .iter()
                .filter(|&&u| {
                    let m = graph.pub_month(u as usize).value();
                    m > t.value() && m <= end
                })
                .count() as u32
        })
        .collect();
    Ok(FuturePopularity { values, t, tf })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rankers::testutil::{graph, month};
    use crate::snapshot::snapshot;

    #[test]
    fn half_open_window() {
        // t = 10, tf = 5: citers at 11 and 15 count, 16 does not, 10 is training.
        let g = graph(
            &[("A", 0), ("B", 10), ("C", 11), ("D", 15), ("E", 16), ("F", 3)],
            &[("B", "A"), ("C", "A"), ("D", "A"), ("E", "A"), ("F", "A")],
        );
        let s = snapshot(&g, month(10), false).unwrap();
        let f = future_popularity(&g, &s, 5).unwrap();
        // snapshot papers: A, B, F
        assert_eq!(f.values, vec![2, 0, 0]);
        assert_eq!(f.total(), 2);
    }

    #[test]
    fn rejects_bad_window() {
        let g = graph(&[("A", 0), ("B", 4)], &[("B", "A")]);
        let s = snapshot(&g, month(2), false).unwrap();
        assert!(future_popularity(&g, &s, 0).is_err());
        assert!(matches!(
            future_popularity(&g, &s, 3),
            Err(Error::WindowBeyondCorpus { end: 5, last: 4 })
        ));
        assert_eq!(future_popularity(&g, &s, 2).unwrap().values, vec![1]);
    }
}

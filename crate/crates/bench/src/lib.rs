//! Shared fixtures for the criterion benches.

use citepop_core::synth::{generate, SynthParams};
use citepop_core::{build_graph, CitationGraph, MonthStamp};

/// Synthetic corpus of `n_papers` papers, ten references each.
pub fn synthetic_graph(n_papers: usize) -> (CitationGraph, MonthStamp) {
    let params = SynthParams {
        n_papers,
        papers_per_month: (n_papers / 200).max(1),
        ..SynthParams::default()
    };
    let corpus = generate(&params).expect("valid synthetic parameters");
    let graph = build_graph(
        &corpus.records,
        corpus.edges.iter().map(|(a, b)| (a.as_str(), b.as_str())),
    )
    .expect("synthetic ids are consistent");
    (graph, params.last_month())
}

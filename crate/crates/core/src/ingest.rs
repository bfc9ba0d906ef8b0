//! CSV ingestion of paper metadata and citing pairs.
//!
//! Two comma-separated files with a header row:
//!
//! ```text
//! external_id,pub_date          citing_id,cited_id
//! PhysRev.1.1,1893-07-01        PhysRev.2.5,PhysRev.1.1
//! ```
//!
//! `pub_date` is `YYYY-MM` or `YYYY-MM-DD`; the day is dropped. Lines starting
//! with `#` are metadata comments and are skipped.

use std::collections::HashSet;
use std::fs::File;
use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{build_graph, CitationGraph, PaperRecord};
use crate::month::MonthStamp;

pub const METADATA_HEADER: [&str; 2] = ["external_id", "pub_date"];
pub const EDGES_HEADER: [&str; 2] = ["citing_id", "cited_id"];

/// Years outside this range are kept but counted in `flagged_out_of_range`.
pub const NOMINAL_YEARS: (i64, i64) = (1893, 2017);

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusStats {
    pub raw_paper_count: usize,
    pub kept_paper_count: usize,
    pub raw_edge_count: usize,
    pub kept_edge_count: usize,
    /// Paper rows with a missing id or a missing/unparseable date.
    pub dropped_incomplete: usize,
    pub dropped_self_loops: usize,
    pub dropped_duplicates: usize,
    /// Edge rows naming an id absent from the kept metadata (including empty ids).
    pub dropped_unknown_endpoint: usize,
    pub flagged_out_of_range: usize,
}

impl CorpusStats {
    fn merge(self, other: CorpusStats) -> CorpusStats {
        CorpusStats {
            raw_paper_count: self.raw_paper_count + other.raw_paper_count,
            kept_paper_count: self.kept_paper_count + other.kept_paper_count,
            raw_edge_count: self.raw_edge_count + other.raw_edge_count,
            kept_edge_count: self.kept_edge_count + other.kept_edge_count,
            dropped_incomplete: self.dropped_incomplete + other.dropped_incomplete,
            dropped_self_loops: self.dropped_self_loops + other.dropped_self_loops,
            dropped_duplicates: self.dropped_duplicates + other.dropped_duplicates,
            dropped_unknown_endpoint: self.dropped_unknown_endpoint + other.dropped_unknown_endpoint,
            flagged_out_of_range: self.flagged_out_of_range + other.flagged_out_of_range,
        }
    }
}

fn reader<R: Read>(input: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(input)
}

fn check_header<R: Read>(rdr: &mut csv::Reader<R>, file: &str, expected: [&str; 2]) -> Result<()> {
    let found = rdr.headers()?;
    if found.len() != 2 || found.iter().zip(expected).any(|(a, b)| a != b) {
        return Err(Error::MalformedHeader {
            file: file.to_string(),
            expected: expected.join(","),
            found: found.iter().collect::<Vec<_>>().join(","),
        });
    }
    Ok(())
}

/// Parses metadata rows. Rows with an empty id or a bad date are counted as
/// incomplete; a repeated id is an error.
pub fn parse_metadata_reader<R: Read>(input: R, name: &str) -> Result<(Vec<PaperRecord>, CorpusStats)> {
    let mut rdr = reader(input);
    check_header(&mut rdr, name, METADATA_HEADER)?;
    let mut stats = CorpusStats::default();
    let mut records = Vec::new();
    let mut seen = HashSet::new();
    for row in rdr.records() {
        let row = row?;
        stats.raw_paper_count += 1;
        let id = row.get(0).unwrap_or("");
        let date = row.get(1).unwrap_or("");
        let month = match date.parse::<MonthStamp>() {
            Ok(m) if !id.is_empty() => m,
            _ => {
                stats.dropped_incomplete += 1;
                continue;
            }
        };
        if !seen.insert(id.to_string()) {
            return Err(Error::DuplicatePaper(id.to_string()));
        }
        if month.year() < NOMINAL_YEARS.0 || month.year() > NOMINAL_YEARS.1 {
            stats.flagged_out_of_range += 1;
        }
        records.push(PaperRecord::new(id, month));
    }
    stats.kept_paper_count = records.len();
    Ok((records, stats))
}

pub fn parse_metadata(path: impl AsRef<Path>) -> Result<(Vec<PaperRecord>, CorpusStats)> {
    let path = path.as_ref();
    parse_metadata_reader(File::open(path)?, &path.display().to_string())
}

pub type EdgeList = Vec<(String, String)>;

/// Parses citing pairs, keeping only edges between known papers, without
/// self-loops or repeats. Every dropped row is counted.
pub fn parse_edges_reader<R: Read>(input: R, name: &str, known_ids: &HashSet<&str>) -> Result<(EdgeList, CorpusStats)> {
    let mut rdr = reader(input);
    check_header(&mut rdr, name, EDGES_HEADER)?;
    let mut stats = CorpusStats::default();
    let mut seen: HashSet<(String, String)> = HashSet::new();
    let mut edges = Vec::new();
    for row in rdr.records() {
        let row = row?;
        stats.raw_edge_count += 1;
        let citing = row.get(0).unwrap_or("");
        let cited = row.get(1).unwrap_or("");
        if !known_ids.contains(citing) || !known_ids.contains(cited) {
            stats.dropped_unknown_endpoint += 1;
            continue;
        }
        if citing == cited {
            stats.dropped_self_loops += 1;
            continue;
        }
        let pair = (citing.to_string(), cited.to_string());
        if !seen.insert(pair.clone()) {
            stats.dropped_duplicates += 1;
            continue;
        }
        edges.push(pair);
    }
    if edges.is_empty() {
        return Err(Error::NoEdges);
    }
    stats.kept_edge_count = edges.len();
    Ok((edges, stats))
}

pub fn parse_edges(path: impl AsRef<Path>, known_ids: &HashSet<&str>) -> Result<(EdgeList, CorpusStats)> {
    let path = path.as_ref();
    parse_edges_reader(File::open(path)?, &path.display().to_string(), known_ids)
}

/// A cleaned corpus ready for ranking.
#[derive(Debug, Clone)]
pub struct Corpus {
    pub graph: CitationGraph,
    pub stats: CorpusStats,
}

/// Parses both files and builds the graph.
pub fn load_corpus(metadata: impl AsRef<Path>, edges: impl AsRef<Path>) -> Result<Corpus> {
    let (records, meta_stats) = parse_metadata(metadata)?;
    let known: HashSet<&str> = records.iter().map(|r| r.external_id.as_str()).collect();
    let (edge_list, edge_stats) = parse_edges(edges, &known)?;
    corpus_from_parts(records, edge_list, meta_stats.merge(edge_stats))
}

pub fn load_corpus_from_readers<A: Read, B: Read>(metadata: A, edges: B) -> Result<Corpus> {
    let (records, meta_stats) = parse_metadata_reader(metadata, "metadata")?;
    let known: HashSet<&str> = records.iter().map(|r| r.external_id.as_str()).collect();
    let (edge_list, edge_stats) = parse_edges_reader(edges, "edges", &known)?;
    corpus_from_parts(records, edge_list, meta_stats.merge(edge_stats))
}

fn corpus_from_parts(records: Vec<PaperRecord>, edges: EdgeList, stats: CorpusStats) -> Result<Corpus> {
    let graph = build_graph(&records, edges.iter().map(|(a, b)| (a.as_str(), b.as_str())))?;
    debug_assert_eq!(graph.n_edges(), stats.kept_edge_count);
    Ok(Corpus { graph, stats })
}

use thiserror::Error;

/// Errors produced by graph construction, ranking and evaluation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("month stamp {0} outside the supported range 0..=4000")]
    MonthOutOfRange(i64),

    #[error("invalid date `{0}` (expected YYYY-MM or YYYY-MM-DD)")]
    InvalidDate(String),

    #[error("duplicate paper id `{0}`")]
    DuplicatePaper(String),

    #[error("edge ({citing}, {cited}) references an unknown paper id")]
    UnknownEndpoint { citing: String, cited: String },

    #[error("snapshot at month {0} contains no papers")]
    EmptySnapshot(u32),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("need at least {needed} items, got {got}")]
    TooFew { needed: usize, got: usize },

    #[error("top fraction {fraction} of {total} papers selects no papers; raise the fraction")]
    EmptyTopSet { fraction: f64, total: usize },

    #[error("future window ends at month {end}, beyond the last publication month {last}")]
    WindowBeyondCorpus { end: u32, last: u32 },

    #[error("malformed header in {file}: expected `{expected}`, found `{found}`")]
    MalformedHeader {
        file: String,
        expected: String,
        found: String,
    },

    #[error("no citation edges survived cleaning")]
    NoEdges,

    #[error("evaluation failed at t={t}, T_f={tf}: {source}")]
    Cell {
        t: crate::month::MonthStamp,
        tf: u32,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

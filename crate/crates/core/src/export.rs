//! Plot-ready CSV and JSON writers.
//!
//! Every CSV starts with `# key: value` metadata lines (skipped by the
//! ingest reader) and every JSON document wraps its payload as
//! `{"meta": ..., "data": ...}`. Nothing time-dependent is written, so
//! identical inputs give byte-identical files.

use std::io::Write;

use serde::Serialize;

use crate::error::Result;
use crate::evaluation::analysis::{AgeBinStats, ScatterPoint};
use crate::evaluation::{Surface, TimeAverage};
use crate::graph::PaperRecord;
use crate::month::MonthStamp;
use crate::rankers::ScoreVector;
use crate::ranking::order_desc;
use crate::snapshot::GraphSnapshot;

pub const TOOL_NAME: &str = "citepop";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Provenance embedded in every output file.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Meta {
    pub tool: String,
    pub version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<MonthStamp>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tf: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Meta {
    pub fn new() -> Self {
        Self {
            tool: TOOL_NAME.into(),
            version: TOOL_VERSION.into(),
            ..Default::default()
        }
    }

    pub fn method(mut self, m: impl ToString) -> Self {
        self.method = Some(m.to_string());
        self
    }

    pub fn params(mut self, p: &impl Serialize) -> Self {
        self.params = serde_json::to_value(p).ok();
        self
    }

    pub fn t(mut self, t: MonthStamp) -> Self {
        self.t = Some(t);
        self
    }

    pub fn tf(mut self, tf: u32) -> Self {
        self.tf = Some(tf);
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn write_csv_header<W: Write>(&self, w: &mut W) -> Result<()> {
        writeln!(w, "# tool: {} {}", self.tool, self.version)?;
        if let Some(m) = &self.method {
            writeln!(w, "# method: {m}")?;
        }
        if let Some(p) = &self.params {
            writeln!(w, "# params: {p}")?;
        }
        if let Some(t) = self.t {
            writeln!(w, "# t: {t}")?;
        }
        if let Some(tf) = self.tf {
            writeln!(w, "# tf: {tf}")?;
        }
        if let Some(s) = self.seed {
            writeln!(w, "# seed: {s}")?;
        }
        for n in &self.notes {
            writeln!(w, "# note: {n}")?;
        }
        Ok(())
    }
}

/// Formats like C's `%.17g`: 17 significant digits, trailing zeros removed,
/// scientific notation when the exponent is below -5 or at least 17.
pub fn fmt_g17(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..17).contains(&exp) {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (16 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn csv_writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().has_headers(false).from_writer(w)
}

/// `external_id,score,rank` in ranking order.
pub fn write_scores_csv<W: Write>(
    mut w: W,
    snapshot: &GraphSnapshot<'_>,
    scores: &ScoreVector,
    meta: &Meta,
) -> Result<()> {
    meta.write_csv_header(&mut w)?;
    let mut out = csv_writer(w);
    out.write_record(["external_id", "score", "rank"])?;
    for (r, i) in order_desc(&scores.values).into_iter().enumerate() {
        out.write_record([
            snapshot.external_id(i),
            &fmt_g17(scores.values[i]),
            &(r + 1).to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_records_csv<W: Write>(mut w: W, records: &[PaperRecord], meta: &Meta) -> Result<()> {
    meta.write_csv_header(&mut w)?;
    let mut out = csv_writer(w);
    out.write_record(crate::ingest::METADATA_HEADER)?;
    for r in records {
        out.write_record([r.external_id.as_str(), &r.pub_month.to_string()])?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_edges_csv<W: Write>(mut w: W, edges: &[(String, String)], meta: &Meta) -> Result<()> {
    meta.write_csv_header(&mut w)?;
    let mut out = csv_writer(w);
    out.write_record(crate::ingest::EDGES_HEADER)?;
    for (a, b) in edges {
        out.write_record([a, b])?;
    }
    out.flush()?;
    Ok(())
}

/// `tau,alpha,metric,value`, one row per grid cell and metric.
pub fn write_surface_csv<W: Write>(mut w: W, surface: &Surface, meta: &Meta) -> Result<()> {
    use crate::evaluation::Metric;
    meta.write_csv_header(&mut w)?;
    let mut out = csv_writer(w);
    out.write_record(["tau", "alpha", "metric", "value"])?;
    for c in &surface.cells {
        for m in Metric::ALL {
            out.write_record([
                fmt_g17(c.tau),
                fmt_g17(c.alpha),
                m.name().into(),
                fmt_g17(c.report.metric(m)),
            ])?;
        }
    }
    out.flush()?;
    Ok(())
}

/// `tf,method,metric,value`.
pub fn write_time_average_csv<W: Write>(mut w: W, averages: &[TimeAverage], meta: &Meta) -> Result<()> {
    meta.write_csv_header(&mut w)?;
    let mut out = csv_writer(w);
    out.write_record(["tf", "method", "metric", "value"])?;
    for avg in averages {
        for r in &avg.rows {
            out.write_record([
                r.tf.to_string(),
                avg.method.tag().into(),
                r.metric.name().into(),
                fmt_g17(r.value),
            ])?;
        }
    }
    out.flush()?;
    Ok(())
}

/// `external_id,rank_ad,rank_other` for the real top papers.
pub fn write_scatter_csv<W: Write>(
    mut w: W,
    snapshot: &GraphSnapshot<'_>,
    points: &[ScatterPoint],
    meta: &Meta,
) -> Result<()> {
    meta.write_csv_header(&mut w)?;
    let mut out = csv_writer(w);
    out.write_record(["external_id", "rank_ad", "rank_other"])?;
    for p in points {
        out.write_record([
            snapshot.external_id(p.node),
            &p.rank_reference.to_string(),
            &p.rank_other.to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

/// Which per-bin quantity an age-bin CSV carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinColumn {
    DetectionRate,
    MeanDeltaR,
}

/// `age_bin,method,rate` (or `mean_delta_r`); empty bins are omitted.
pub fn write_age_bins_csv<W: Write>(
    mut w: W,
    per_method: &[(String, AgeBinStats)],
    column: BinColumn,
    meta: &Meta,
) -> Result<()> {
    meta.write_csv_header(&mut w)?;
    let mut out = csv_writer(w);
    let name = match column {
        BinColumn::DetectionRate => "rate",
        BinColumn::MeanDeltaR => "mean_delta_r",
    };
    out.write_record(["age_bin", "method", name])?;
    for (method, stats) in per_method {
        for b in &stats.bins {
            let v = match column {
                BinColumn::DetectionRate => b.rate,
                BinColumn::MeanDeltaR => b.mean_delta_r,
            };
            if let Some(v) = v {
                out.write_record([b.lo.to_string(), method.clone(), fmt_g17(v)])?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

/// `age,method,fraction` survival curves.
pub fn write_age_cdf_csv<W: Write>(mut w: W, per_method: &[(String, Vec<(u32, f64)>)], meta: &Meta) -> Result<()> {
    meta.write_csv_header(&mut w)?;
    let mut out = csv_writer(w);
    out.write_record(["age", "method", "fraction"])?;
    for (method, curve) in per_method {
        for &(age, frac) in curve {
            out.write_record([age.to_string(), method.clone(), fmt_g17(frac)])?;
        }
    }
    out.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    meta: &'a Meta,
    data: &'a T,
}

/// Pretty-printed `{"meta": ..., "data": ...}` followed by a newline.
pub fn write_json<W: Write, T: Serialize>(mut w: W, data: &T, meta: &Meta) -> Result<()> {
    serde_json::to_writer_pretty(&mut w, &Envelope { meta, data })?;
    writeln!(w)?;
    Ok(())
}

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ranking::{top_count, top_n};

/// A correlation coefficient. Zero-variance inputs give `value = 0` with
/// `degenerate` set instead of an error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Correlation {
    pub value: f64,
    pub degenerate: bool,
}

fn check_pair(s: &[f64], f: &[f64]) -> Result<()> {
    if s.len() != f.len() {
        return Err(Error::LengthMismatch {
            left: s.len(),
            right: f.len(),
        });
    }
    if s.len() < 2 {
        return Err(Error::TooFew {
            needed: 2,
            got: s.len(),
        });
    }
    Ok(())
}

fn is_constant(v: &[f64]) -> bool {
    v.iter().all(|&x| x == v[0])
}

/// Population Pearson correlation.
pub fn pearson(s: &[f64], f: &[f64]) -> Result<Correlation> {
    check_pair(s, f)?;
    if is_constant(s) || is_constant(f) {
        return Ok(Correlation {
            value: 0.0,
            degenerate: true,
        });
    }
    let n = s.len() as f64;
    let ms = s.iter().sum::<f64>() / n;
    let mf = f.iter().sum::<f64>() / n;
    let (mut cov, mut vs, mut vf) = (0.0, 0.0, 0.0);
    for (&a, &b) in s.iter().zip(f) {
        let (da, db) = (a - ms, b - mf);
        cov += da * db;
        vs += da * da;
        vf += db * db;
    }
    if vs == 0.0 || vf == 0.0 {
        return Ok(Correlation {
            value: 0.0,
            degenerate: true,
        });
    }
    let r = cov / (vs.sqrt() * vf.sqrt());
    Ok(Correlation {
        value: r.clamp(-1.0, 1.0),
        degenerate: false,
    })
}

/// 1-based ascending ranks; tied values share the mean of their positions.
pub fn average_ranks(v: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&a, &b| v[a].total_cmp(&v[b]));
    let mut ranks = vec![0.0; v.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i + 1;
        while j < idx.len() && v[idx[j]] == v[idx[i]] {
            j += 1;
        }
        // positions i+1 ..= j
        let avg = (i + 1 + j) as f64 / 2.0;
        for &k in &idx[i..j] {
            ranks[k] = avg;
        }
        i = j;
    }
    ranks
}

/// Spearman correlation: Pearson of the tie-averaged rank vectors.
pub fn spearman(s: &[f64], f: &[f64]) -> Result<Correlation> {
    check_pair(s, f)?;
    pearson(&average_ranks(s), &average_ranks(f))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Precision {
    pub precision: f64,
    pub n_top: usize,
    /// Papers present in both top sets.
    pub hits: usize,
}

/// Overlap of the top `floor(fraction * N)` papers by score and by future
/// popularity, each selected with the (value desc, id asc) total order.
pub fn precision_at_top(s: &[f64], f: &[f64], fraction: f64) -> Result<Precision> {
    if s.len() != f.len() {
        return Err(Error::LengthMismatch {
            left: s.len(),
            right: f.len(),
        });
    }
    if !(fraction > 0.0 && fraction <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "fraction must lie in (0, 1], got {fraction}"
        )));
    }
    let n = top_count(fraction, s.len());
    if n == 0 {
        return Err(Error::EmptyTopSet {
            fraction,
            total: s.len(),
        });
    }
    let mut in_real = vec![false; s.len()];
    for i in top_n(f, n) {
        in_real[i] = true;
    }
    let hits = top_n(s, n).into_iter().filter(|&i| in_real[i]).count();
    Ok(Precision {
        precision: hits as f64 / n as f64,
        n_top: n,
        hits,
    })
}

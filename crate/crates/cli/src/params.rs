use citepop_core::{Method, RankerConfig};

use crate::args::ParamArgs;
use crate::error::CliError;

fn reject(flag: &str, given: bool, method: Method) -> Result<(), CliError> {
    if given {
        return Err(CliError::Usage(format!("--{flag} does not apply to method `{method}`")));
    }
    Ok(())
}

/// Builds and validates the ranker configuration for `method`.
pub fn ranker_config(method: Method, p: &ParamArgs) -> Result<RankerConfig, CliError> {
    let mut cfg = RankerConfig::default_for(method);
    match &mut cfg {
        RankerConfig::PageRank(pr) | RankerConfig::Rescaled { pagerank: pr, .. } => {
            reject("tau", p.tau.is_some(), method)?;
            reject("alpha", p.alpha.is_some(), method)?;
            reject("step-base", p.step_base.is_some(), method)?;
            reject("max-terms", p.max_terms.is_some(), method)?;
            if let Some(c) = p.c {
                pr.c = c;
            }
            if let Some(tol) = p.tol {
                pr.tol = tol;
            }
            if let Some(m) = p.max_iter {
                pr.max_iter = m;
            }
        }
        RankerConfig::CiteRank(cr) => {
            reject("c", p.c.is_some(), method)?;
            reject("step-base", p.step_base.is_some(), method)?;
            reject("max-iter", p.max_iter.is_some(), method)?;
            cr.tau = p.tau.unwrap_or(cr.tau);
            cr.alpha = p.alpha.unwrap_or(cr.alpha);
            cr.tol = p.tol.unwrap_or(cr.tol);
            cr.max_terms = p.max_terms.unwrap_or(cr.max_terms);
        }
        RankerConfig::AgeDiffusion(ad) => {
            reject("c", p.c.is_some(), method)?;
            reject("max-iter", p.max_iter.is_some(), method)?;
            ad.tau = p.tau.unwrap_or(ad.tau);
            ad.alpha = p.alpha.unwrap_or(ad.alpha);
            ad.step_decay_base = p.step_base.unwrap_or(ad.step_decay_base);
            ad.tol = p.tol.unwrap_or(ad.tol);
            ad.max_terms = p.max_terms.unwrap_or(ad.max_terms);
        }
        RankerConfig::Seed { .. } => {}
    }
    match (&mut cfg, p.delta_p) {
        (RankerConfig::Rescaled { rescale, .. }, Some(d)) => rescale.delta_p = d,
        (_, Some(_)) => reject("delta-p", true, method)?,
        _ => {}
    }
    if matches!(cfg, RankerConfig::CiteRank(_) | RankerConfig::AgeDiffusion(_)) && p.max_terms == Some(0) {
        return Err(CliError::Usage("--max-terms must be positive".into()));
    }
    cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(cfg)
}

pub fn check_fraction(fraction: f64) -> Result<(), CliError> {
    if fraction > 0.0 && fraction <= 1.0 {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "--fraction must lie in (0, 1], got {fraction}"
        )))
    }
}

/// Parses `a,b,c` or `start:step:end` (inclusive) into a non-empty list.
pub fn parse_grid(flag: &str, text: &str) -> Result<Vec<f64>, CliError> {
    let bad = |why: &str| CliError::Usage(format!("--{flag} `{text}`: {why}"));
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| bad("not a number"));
    let values = match text.split(':').collect::<Vec<_>>()[..] {
        [a, step, b] => {
            let (a, step, b) = (num(a)?, num(step)?, num(b)?);
            if !(step > 0.0 && a.is_finite() && b.is_finite() && b >= a) {
                return Err(bad("range needs start <= end and a positive step"));
            }
            let n = ((b - a) / step + 1e-9).floor() as usize + 1;
            if n > 100_000 {
                return Err(bad("range has too many points"));
            }
            // Rounded so that e.g. 0.05 * 3 prints as 0.15.
            (0..n).map(|k| ((a + k as f64 * step) * 1e9).round() / 1e9).collect()
        }
        [_] => text.split(',').map(num).collect::<Result<Vec<_>, _>>()?,
        _ => return Err(bad("expected a comma list or start:step:end")),
    };
    if values.is_empty() {
        return Err(bad("empty grid"));
    }
    Ok(values)
}

/// Positive integer list such as `12,24,60`.
pub fn parse_months(flag: &str, text: &str) -> Result<Vec<u32>, CliError> {
    let out = text
        .split(',')
        .map(|s| s.trim().parse::<u32>().ok().filter(|&v| v > 0))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| {
            CliError::Usage(format!(
                "--{flag} `{text}`: expected positive integers separated by commas"
            ))
        })?;
    Ok(out)
}

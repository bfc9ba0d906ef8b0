use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use citepop_core::evaluation::analysis::{
    cumulative_age_distribution, detection_rate_by_age, ranking_scatter, AgeBinStats,
};
use citepop_core::evaluation::{
    draw_testing_times, multi_time_average, parameter_sweep, Metric, ParamChoice, Surface, TimeAverage,
};
use citepop_core::export::{
    write_age_bins_csv, write_age_cdf_csv, write_edges_csv, write_json, write_records_csv, write_scatter_csv,
    write_scores_csv, write_surface_csv, write_time_average_csv, BinColumn, Meta,
};
use citepop_core::ingest::{load_corpus, Corpus, CorpusStats};
use citepop_core::ranking::{order_desc, top_count, top_n};
use citepop_core::synth::{generate, FitnessDist, SynthParams};
use citepop_core::{
    evaluate, future_popularity, rank, snapshot, EvalReport, GraphSnapshot, Method, MonthStamp, RankerConfig,
    ScoreVector,
};
use serde::Serialize;

use crate::args::{
    CorpusArgs, EvaluateArgs, FiguresArgs, Format, IngestArgs, ParamArgs, RankArgs, SnapshotArgs, SweepArgs,
    SweepMethodArg, SynthArgs,
};
use crate::error::CliError;
use crate::params::{check_fraction, parse_grid, parse_months, ranker_config};

type CliResult<T> = Result<T, CliError>;

/// Writes to `path`, or to standard output when absent.
fn emit(path: Option<&Path>, bytes: &[u8]) -> CliResult<()> {
    match path {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir)?;
            }
            fs::write(p, bytes)?;
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
        }
    }
    Ok(())
}

/// Writes every `(file name, contents)` pair into `dir` in order.
fn emit_all(dir: &Path, files: &[(String, Vec<u8>)]) -> CliResult<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::with_capacity(files.len());
    for (name, bytes) in files {
        let p = dir.join(name);
        fs::write(&p, bytes)?;
        written.push(p);
    }
    Ok(written)
}

fn load(c: &CorpusArgs) -> CliResult<Corpus> {
    Ok(load_corpus(&c.papers, &c.citations)?)
}

fn filter_note(s: &SnapshotArgs) -> &'static str {
    if s.no_filter {
        "uncited papers kept"
    } else {
        "uncited papers removed"
    }
}

/// Fails with exit status 3 under `--strict`, otherwise warns.
fn check_converged(strict: bool, failures: &[String]) -> CliResult<()> {
    if failures.is_empty() {
        return Ok(());
    }
    let msg = format!("did not converge: {}", failures.join("; "));
    if strict {
        return Err(CliError::NotConverged(msg));
    }
    eprintln!("warning: {msg}");
    Ok(())
}

fn convergence_failure(s: &ScoreVector) -> Option<String> {
    (!s.converged).then(|| format!("{} after {} iterations", s.method, s.iterations))
}

fn base_meta(cfg: &RankerConfig) -> Meta {
    Meta::new().method(cfg.method()).params(cfg)
}

#[derive(Serialize)]
struct SnapshotSummary {
    t: MonthStamp,
    filter_uncited: bool,
    n_papers: usize,
    n_edges: usize,
}

#[derive(Serialize)]
struct IngestSummary {
    stats: CorpusStats,
    n_papers: usize,
    n_edges: usize,
    first_month: Option<MonthStamp>,
    last_month: Option<MonthStamp>,
    #[serde(skip_serializing_if = "Option::is_none")]
    snapshot: Option<SnapshotSummary>,
}

pub fn ingest(a: &IngestArgs) -> CliResult<()> {
    let corpus = load(&a.corpus)?;
    let g = &corpus.graph;
    let snap = match a.t {
        Some(t) => {
            let s = snapshot(g, t, !a.no_filter)?;
            Some(SnapshotSummary {
                t,
                filter_uncited: !a.no_filter,
                n_papers: s.len(),
                n_edges: s.n_edges(),
            })
        }
        None => None,
    };
    let summary = IngestSummary {
        stats: corpus.stats,
        n_papers: g.n_nodes(),
        n_edges: g.n_edges(),
        first_month: g.first_month(),
        last_month: g.last_month(),
        snapshot: snap,
    };
    let mut buf = Vec::new();
    write_json(&mut buf, &summary, &Meta::new())?;
    emit(a.out.as_deref(), &buf)
}

pub fn synth(a: &SynthArgs) -> CliResult<()> {
    let fitness = if a.fitness_sigma == 0.0 {
        FitnessDist::Constant { value: 1.0 }
    } else {
        FitnessDist::LogNormal {
            mu: 0.0,
            sigma: a.fitness_sigma,
        }
    };
    let params = SynthParams {
        n_papers: a.n_papers,
        papers_per_month: a.per_month,
        refs_per_paper: a.refs,
        fitness,
        theta: a.theta,
        seed: a.seed,
        start: a.start,
    };
    params.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    let corpus = generate(&params)?;
    let meta = Meta::new().method("synth").params(&params).seed(a.seed);
    let mut papers = Vec::new();
    write_records_csv(&mut papers, &corpus.records, &meta)?;
    let mut citations = Vec::new();
    write_edges_csv(&mut citations, &corpus.edges, &meta)?;
    let written = emit_all(
        &a.out_dir,
        &[("papers.csv".into(), papers), ("citations.csv".into(), citations)],
    )?;
    for p in written {
        println!("{}", p.display());
    }
    Ok(())
}

#[derive(Serialize)]
struct ScoreRow<'a> {
    external_id: &'a str,
    score: f64,
    rank: usize,
}

#[derive(Serialize)]
struct ScoresDoc<'a> {
    converged: bool,
    iterations: usize,
    scores: Vec<ScoreRow<'a>>,
}

pub fn rank_cmd(a: &RankArgs) -> CliResult<()> {
    let cfg = ranker_config(a.method.into(), &a.params)?;
    let corpus = load(&a.corpus)?;
    let snap = snapshot(&corpus.graph, a.snapshot.t, !a.snapshot.no_filter)?;
    let scores = rank(&snap, &cfg)?;
    check_converged(a.strict, &convergence_failure(&scores).into_iter().collect::<Vec<_>>())?;
    let meta = base_meta(&cfg)
        .t(a.snapshot.t)
        .note(filter_note(&a.snapshot))
        .note(format!(
            "converged: {}, iterations: {}",
            scores.converged, scores.iterations
        ));
    let mut buf = Vec::new();
    match a.output.format.unwrap_or(Format::Csv) {
        Format::Csv => write_scores_csv(&mut buf, &snap, &scores, &meta)?,
        Format::Json => {
            let rows = order_desc(&scores.values)
                .into_iter()
                .enumerate()
                .map(|(r, i)| ScoreRow {
                    external_id: snap.external_id(i),
                    score: scores.values[i],
                    rank: r + 1,
                })
                .collect();
            let doc = ScoresDoc {
                converged: scores.converged,
                iterations: scores.iterations,
                scores: rows,
            };
            write_json(&mut buf, &doc, &meta)?;
        }
    }
    emit(a.output.out.as_deref(), &buf)
}

fn write_report_csv(buf: &mut Vec<u8>, r: &EvalReport, meta: &Meta) -> CliResult<()> {
    use citepop_core::export::fmt_g17;
    meta.write_csv_header(buf)?;
    writeln!(
        buf,
        "method,t,tf,n_papers,pearson,spearman,precision,n_top,convergence_ok"
    )?;
    writeln!(
        buf,
        "{},{},{},{},{},{},{},{},{}",
        r.method,
        r.t,
        r.tf,
        r.n_papers,
        fmt_g17(r.pearson),
        fmt_g17(r.spearman),
        fmt_g17(r.precision),
        r.n_top,
        r.convergence_ok
    )?;
    Ok(())
}

pub fn evaluate_cmd(a: &EvaluateArgs) -> CliResult<()> {
    let cfg = ranker_config(a.method.into(), &a.params)?;
    check_fraction(a.fraction)?;
    let corpus = load(&a.corpus)?;
    let snap = snapshot(&corpus.graph, a.snapshot.t, !a.snapshot.no_filter)?;
    let future = future_popularity(&corpus.graph, &snap, a.tf)?;
    let scores = rank(&snap, &cfg)?;
    check_converged(a.strict, &convergence_failure(&scores).into_iter().collect::<Vec<_>>())?;
    let report = evaluate(&scores, &future, a.fraction)?;
    let meta = base_meta(&cfg).t(a.snapshot.t).tf(a.tf).note(filter_note(&a.snapshot));
    let mut buf = Vec::new();
    match a.output.format.unwrap_or(Format::Json) {
        Format::Json => write_json(&mut buf, &report, &meta)?,
        Format::Csv => write_report_csv(&mut buf, &report, &meta)?,
    }
    emit(a.output.out.as_deref(), &buf)
}

fn sweep_base(method: SweepMethodArg, p: &ParamArgs) -> CliResult<RankerConfig> {
    if p.tau.is_some() || p.alpha.is_some() {
        return Err(CliError::Usage("use --taus and --alphas to set the sweep grid".into()));
    }
    let method = match method {
        SweepMethodArg::Cr => Method::CiteRank,
        SweepMethodArg::Ad => Method::AgeDiffusion,
    };
    ranker_config(method, p)
}

/// Validates every grid point before any work starts.
fn check_grid(base: &RankerConfig, taus: &[f64], alphas: &[f64]) -> CliResult<()> {
    for &t in taus {
        for &a in alphas {
            base.with_tau_alpha(t, a)
                .validate()
                .map_err(|e| CliError::Usage(e.to_string()))?;
        }
    }
    Ok(())
}

fn surface_failures(s: &Surface) -> Vec<String> {
    s.cells
        .iter()
        .filter(|c| !c.report.convergence_ok)
        .map(|c| format!("{} at tau={} alpha={}", s.method, c.tau, c.alpha))
        .collect()
}

fn surface_meta(s: &Surface, base: &RankerConfig, t: MonthStamp, tf: u32) -> Meta {
    let mut meta = base_meta(base).t(t).tf(tf).note("tau and alpha vary over the grid");
    for b in &s.best {
        meta = meta.note(format!(
            "best {}: tau={} alpha={} value={}",
            b.metric, b.tau, b.alpha, b.value
        ));
    }
    meta
}

pub fn sweep(a: &SweepArgs) -> CliResult<()> {
    let base = sweep_base(a.method, &a.params)?;
    let taus = parse_grid("taus", &a.taus)?;
    let alphas = parse_grid("alphas", &a.alphas)?;
    check_grid(&base, &taus, &alphas)?;
    check_fraction(a.fraction)?;
    let corpus = load(&a.corpus)?;
    let snap = snapshot(&corpus.graph, a.snapshot.t, !a.snapshot.no_filter)?;
    let future = future_popularity(&corpus.graph, &snap, a.tf)?;
    let surface = parameter_sweep(&snap, &future, &base, &taus, &alphas, a.fraction)?;
    check_converged(a.strict, &surface_failures(&surface))?;

    let meta = surface_meta(&surface, &base, a.snapshot.t, a.tf).note(filter_note(&a.snapshot));
    let tag = surface.method.tag();
    let mut csv = Vec::new();
    write_surface_csv(&mut csv, &surface, &meta)?;
    let mut json = Vec::new();
    write_json(&mut json, &surface, &meta)?;
    let written = emit_all(
        &a.out_dir,
        &[
            (format!("surface_{tag}.csv"), csv),
            (format!("surface_{tag}.json"), json),
        ],
    )?;
    for b in &surface.best {
        println!("best {}: tau={} alpha={} value={}", b.metric, b.tau, b.alpha, b.value);
    }
    for p in written {
        println!("{}", p.display());
    }
    Ok(())
}

/// Everything `figures` computes before writing.
struct FigureData<'g> {
    snap: GraphSnapshot<'g>,
    surfaces: Vec<(RankerConfig, Surface)>,
    averages: Vec<TimeAverage>,
    times: Vec<MonthStamp>,
    scores: Vec<ScoreVector>,
    future: Vec<f64>,
}

pub fn figures(a: &FiguresArgs) -> CliResult<()> {
    let taus = parse_grid("taus", &a.taus)?;
    let alphas = parse_grid("alphas", &a.alphas)?;
    let tfs = parse_months("tfs", &a.tfs)?;
    check_fraction(a.fraction)?;
    let pr_cfg = ranker_config(
        Method::PageRank,
        &ParamArgs {
            c: a.c,
            ..Default::default()
        },
    )?;
    let rs_cfg = ranker_config(
        Method::Rescaled,
        &ParamArgs {
            c: a.c,
            delta_p: a.delta_p,
            ..Default::default()
        },
    )?;
    let cr_base = RankerConfig::default_for(Method::CiteRank);
    let ad_base = RankerConfig::default_for(Method::AgeDiffusion);
    check_grid(&cr_base, &taus, &alphas)?;
    check_grid(&ad_base, &taus, &alphas)?;
    let times =
        draw_testing_times(a.seed, a.times, a.time_lo, a.time_hi).map_err(|e| CliError::Usage(e.to_string()))?;

    let corpus = load(&a.corpus)?;
    let graph = &corpus.graph;
    let filter = !a.snapshot.no_filter;
    let snap = snapshot(graph, a.snapshot.t, filter)?;
    let fut = future_popularity(graph, &snap, a.tf)?;

    let mut surfaces = Vec::new();
    for base in [cr_base, ad_base] {
        surfaces.push((base, parameter_sweep(&snap, &fut, &base, &taus, &alphas, a.fraction)?));
    }
    let tuned = |s: &Surface, base: &RankerConfig| {
        let b = s.best(Metric::Precision);
        base.with_tau_alpha(b.tau, b.alpha)
    };
    let cr_cfg = tuned(&surfaces[0].1, &cr_base);
    let ad_cfg = tuned(&surfaces[1].1, &ad_base);
    let configs = [pr_cfg, cr_cfg, rs_cfg, ad_cfg];
    let scores = configs.iter().map(|c| rank(&snap, c)).collect::<Result<Vec<_>, _>>()?;

    let choices = [
        ParamChoice::Fixed(pr_cfg),
        ParamChoice::Grid {
            base: cr_base,
            taus: taus.clone(),
            alphas: alphas.clone(),
        },
        ParamChoice::Fixed(rs_cfg),
        ParamChoice::Grid {
            base: ad_base,
            taus: taus.clone(),
            alphas: alphas.clone(),
        },
    ];
    let averages = choices
        .iter()
        .map(|c| multi_time_average(graph, &times, &tfs, c, a.fraction, filter))
        .collect::<Result<Vec<_>, _>>()?;

    let mut failures: Vec<String> = surfaces.iter().flat_map(|(_, s)| surface_failures(s)).collect();
    failures.extend(scores.iter().filter_map(convergence_failure));
    for avg in &averages {
        failures.extend(
            avg.rows
                .iter()
                .filter(|r| !r.convergence_ok)
                .map(|r| format!("{} multi-time average at tf={} ({})", avg.method, r.tf, r.metric)),
        );
    }
    check_converged(a.strict, &failures)?;

    let data = FigureData {
        snap,
        surfaces,
        averages,
        times,
        scores,
        future: fut.as_f64(),
    };
    let files = render_figures(a, &data, &configs)?;
    for p in emit_all(&a.out_dir, &files)? {
        println!("{}", p.display());
    }
    Ok(())
}

fn render_figures(a: &FiguresArgs, d: &FigureData<'_>, configs: &[RankerConfig]) -> CliResult<Vec<(String, Vec<u8>)>> {
    let t = a.snapshot.t;
    let params: BTreeMap<&str, RankerConfig> = configs.iter().map(|c| (c.method().tag(), *c)).collect();
    let shared = Meta::new()
        .params(&params)
        .t(t)
        .tf(a.tf)
        .note(filter_note(&a.snapshot))
        .note("cr and ad use the best-precision grid cell at t");
    let mut files = Vec::new();

    for (base, s) in &d.surfaces {
        let meta = surface_meta(s, base, t, a.tf).note(filter_note(&a.snapshot));
        let mut buf = Vec::new();
        write_surface_csv(&mut buf, s, &meta)?;
        files.push((format!("fig1_surface_{}.csv", s.method.tag()), buf));
    }

    let times: Vec<String> = d.times.iter().map(|t| t.to_string()).collect();
    let meta = Meta::new()
        .seed(a.seed)
        .note(format!("testing times: {}", times.join(" ")))
        .note("cr and ad re-optimized over the grid for each (metric, tf); pr and rs fixed")
        .note(filter_note(&a.snapshot));
    let mut buf = Vec::new();
    write_time_average_csv(&mut buf, &d.averages, &meta)?;
    files.push(("fig2_time_average.csv".into(), buf));
    let mut buf = Vec::new();
    write_json(&mut buf, &d.averages, &meta)?;
    files.push(("fig2_time_average.json".into(), buf));

    let ad = d
        .scores
        .iter()
        .find(|s| s.method == Method::AgeDiffusion)
        .expect("ad scored");
    for other in d.scores.iter().filter(|s| s.method != Method::AgeDiffusion) {
        let points = ranking_scatter(&ad.values, &other.values, &d.future, a.fraction)?;
        let mut buf = Vec::new();
        write_scatter_csv(
            &mut buf,
            &d.snap,
            &points,
            &shared.clone().method(format!("ad vs {}", other.method)),
        )?;
        files.push((format!("fig3_scatter_{}.csv", other.method.tag()), buf));
    }

    let ages = d.snap.ages();
    let bins: Vec<(String, AgeBinStats)> = d
        .scores
        .iter()
        .map(|s| {
            detection_rate_by_age(&s.values, &d.future, ages, a.fraction, a.bin_width)
                .map(|b| (s.method.tag().to_string(), b))
        })
        .collect::<Result<_, _>>()?;
    let mut buf = Vec::new();
    write_age_bins_csv(&mut buf, &bins, BinColumn::MeanDeltaR, &shared)?;
    files.push(("fig4_delta_r.csv".into(), buf));

    let n_top = top_count(a.fraction, d.future.len());
    let ages_of = |v: &[f64]| top_n(v, n_top).into_iter().map(|i| ages[i]).collect::<Vec<u32>>();
    let mut curves = vec![(
        "real".to_string(),
        cumulative_age_distribution(&ages_of(&d.future), a.bin_width)?,
    )];
    for s in &d.scores {
        curves.push((
            s.method.tag().to_string(),
            cumulative_age_distribution(&ages_of(&s.values), a.bin_width)?,
        ));
    }
    let mut buf = Vec::new();
    write_age_cdf_csv(&mut buf, &curves, &shared)?;
    files.push(("fig5_age_cdf.csv".into(), buf));

    let mut buf = Vec::new();
    write_age_bins_csv(&mut buf, &bins, BinColumn::DetectionRate, &shared)?;
    files.push(("fig6_detection.csv".into(), buf));
    Ok(files)
}

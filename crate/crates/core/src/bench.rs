//! Corpus benchmark: every rule on every instance, one report row each.

use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::io::{read_raw, ReportRow, Timing};
use crate::reducer::{reduce, ReduceError, ReduceOptions, Variant};

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub rules: Vec<Variant>,
    pub timeout: Option<Duration>,
    /// Worker threads; instances run in parallel, rules of one instance in
    /// sequence. `1` keeps everything on the calling thread.
    pub jobs: usize,
    /// Iterate Plus/Extra to a fixpoint instead of a single round.
    pub iterate: bool,
}

impl BenchConfig {
    pub fn new(rules: Vec<Variant>) -> Self {
        Self {
            rules,
            timeout: None,
            jobs: 1,
            iterate: false,
        }
    }
}

/// `.gr` and `.el` files of `dir`, sorted by file name.
pub fn corpus_files(dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for entry in std::fs::read_dir(dir)? {
        let path = entry?.path();
        let ext = path.extension().and_then(|e| e.to_str());
        if path.is_file() && matches!(ext, Some("gr" | "el")) {
            files.push(path);
        }
    }
    files.sort_by(|a, b| a.file_name().cmp(&b.file_name()));
    Ok(files)
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

/// Rows for one instance, in rule order.
pub fn bench_instance(path: &Path, cfg: &BenchConfig) -> Vec<ReportRow> {
    let name = path
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let failed_all = |size, status| -> Vec<ReportRow> {
        cfg.rules
            .iter()
            .map(|v| ReportRow::failed(&name, size, v.name(), status))
            .collect()
    };
    let Ok(raw) = read_raw(path, None) else {
        return failed_all(None, Timing::Error);
    };
    let start = Instant::now();
    let Ok(g) = raw.build() else {
        return failed_all(None, Timing::Error);
    };
    let build_ms = ms(start.elapsed());

    cfg.rules
        .iter()
        .map(|&variant| {
            let iterate = cfg.iterate && matches!(variant, Variant::Plus | Variant::Extra);
            let start = Instant::now();
            let opts = ReduceOptions {
                iterate,
                deadline: cfg.timeout.map(|t| start + t),
                ..ReduceOptions::new(variant)
            };
            match reduce(&g, &opts) {
                Ok(red) => ReportRow::finished(
                    &name,
                    &g,
                    variant.name(),
                    &red.report,
                    build_ms,
                    ms(start.elapsed()),
                ),
                Err(ReduceError::Timeout) => ReportRow::failed(
                    &name,
                    Some((g.len(), g.num_edges())),
                    variant.name(),
                    Timing::Timeout,
                ),
                Err(_) => ReportRow::failed(
                    &name,
                    Some((g.len(), g.num_edges())),
                    variant.name(),
                    Timing::Error,
                ),
            }
        })
        .collect()
}

/// Runs the corpus. Rows come out sorted by file name, then in rule order,
/// whatever the worker count.
pub fn run_bench(dir: &Path, cfg: &BenchConfig) -> std::io::Result<Vec<ReportRow>> {
    let files = corpus_files(dir)?;
    if cfg.jobs <= 1 {
        return Ok(files.iter().flat_map(|f| bench_instance(f, cfg)).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(std::io::Error::other)?;
    let per_file: Vec<Vec<ReportRow>> =
        pool.install(|| files.par_iter().map(|f| bench_instance(f, cfg)).collect());
    Ok(per_file.into_iter().flatten().collect())
}

//! Batch runs over a manifest of instance files.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use super::{dispatch_portfolio, dispatch_with, SolveReport, Strategy, Thresholds};
use crate::error::Result;
use crate::graph::io::parse_instance;
use crate::search::SearchLimits;

pub const CSV_HEADER: &str = "digest,n,m,p,algorithm,answer,nodes,states,millis";

#[derive(Clone, Debug)]
pub struct BenchOptions {
    pub strategy: Strategy,
    pub limits: SearchLimits,
    pub thresholds: Thresholds,
    /// Race the oracle against the automatic pick; ignored for forced runs.
    pub portfolio: bool,
    /// When false the millis column is written as 0, so repeated runs
    /// produce identical output.
    pub timing: bool,
}

impl Default for BenchOptions {
    fn default() -> Self {
        BenchOptions {
            strategy: Strategy::Auto,
            limits: SearchLimits::default(),
            thresholds: Thresholds::default(),
            portfolio: false,
            timing: true,
        }
    }
}

#[derive(Clone, Debug)]
pub enum BenchRow {
    Solved { path: PathBuf, report: SolveReport },
    Failed { path: PathBuf, error: String },
}

/// Instance paths, one per line, relative to the manifest's directory.
/// Blank lines and `#` comments are skipped.
pub fn read_manifest(path: &Path) -> Result<Vec<PathBuf>> {
    let text = std::fs::read_to_string(path)?;
    let base = path.parent().unwrap_or(Path::new(""));
    Ok(text
        .lines()
        .map(str::trim)
        .filter(|line| !line.is_empty() && !line.starts_with('#'))
        .map(|line| base.join(line))
        .collect())
}

/// Solves every instance, in parallel; rows keep manifest order.
pub fn cmd_bench(paths: &[PathBuf], options: &BenchOptions) -> Vec<BenchRow> {
    paths
        .par_iter()
        .map(|path| {
            let solved = std::fs::read_to_string(path).map_err(Into::into).and_then(|text| {
                let instance = parse_instance(&text)?;
                if options.portfolio && options.strategy == Strategy::Auto {
                    dispatch_portfolio(&instance, &options.limits, &options.thresholds)
                } else {
                    dispatch_with(&instance, options.strategy, &options.limits, &options.thresholds)
                }
            });
            match solved {
                Ok(mut report) => {
                    if !options.timing {
                        report.millis = 0;
                    }
                    BenchRow::Solved { path: path.clone(), report }
                }
                Err(err) => BenchRow::Failed { path: path.clone(), error: err.to_string() },
            }
        })
        .collect()
}

pub fn bench_csv(rows: &[BenchRow]) -> String {
    let mut out = format!("{CSV_HEADER}\n");
    for row in rows {
        match row {
            BenchRow::Solved { report: r, .. } => {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{}",
                    r.digest,
                    r.n,
                    r.m,
                    r.p,
                    r.algorithm_tag(),
                    r.answer,
                    r.counters.nodes,
                    r.counters.states,
                    r.millis
                );
            }
            BenchRow::Failed { .. } => out.push_str(",,,,,error,,,\n"),
        }
    }
    out
}

pub fn bench_text(rows: &[BenchRow]) -> String {
    let mut out = String::new();
    for row in rows {
        match row {
            BenchRow::Solved { path, report: r } => {
                let _ = writeln!(
                    out,
                    "{}: {} by {} ({} nodes, {} ms)",
                    path.display(),
                    r.answer,
                    r.algorithm_tag(),
                    r.counters.nodes,
                    r.millis
                );
            }
            BenchRow::Failed { path, error } => {
                let _ = writeln!(out, "{}: error: {error}", path.display());
            }
        }
    }
    out
}

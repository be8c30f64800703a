//! Algorithm selection and run reports.

mod bench;

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::{mpsc, Arc};
use std::time::Instant;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::analyzers::{
    build_cotree, compute_nice_tree_decomposition, find_modulator, neighbourhood_diversity, parameter_report,
    vertex_integrity, Budgets, Family, ParameterReport,
};
use crate::dp::{
    solve_clique, solve_clique_modulator_in, solve_cluster_modulator_in, solve_cograph_in, solve_treewidth_in,
};
use crate::error::{Error, Result};
use crate::graph::io::serialize_instance;
use crate::graph::{verify_partition, Instance, Partition};
use crate::ilp::{
    solve_modular_width_in, solve_neighbourhood_diversity_in, solve_three_pvc_in, solve_vertex_integrity_in,
};
use crate::oracle::solve_exact_in;
use crate::search::{Counters, Search, SearchLimits};

pub use bench::{bench_csv, bench_text, cmd_bench, read_manifest, BenchOptions, BenchRow, CSV_HEADER};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Algorithm {
    #[serde(rename = "oracle")]
    Oracle,
    #[serde(rename = "clique")]
    Clique,
    #[serde(rename = "cograph")]
    Cograph,
    #[serde(rename = "treewidth")]
    Treewidth,
    #[serde(rename = "nd")]
    NeighbourhoodDiversity,
    #[serde(rename = "mw")]
    ModularWidth,
    #[serde(rename = "dclique")]
    DistanceToClique,
    #[serde(rename = "dcluster")]
    DistanceToCluster,
    #[serde(rename = "vi")]
    VertexIntegrity,
    #[serde(rename = "3pvc")]
    ThreePathCover,
}

impl Algorithm {
    pub const ALL: [Algorithm; 10] = [
        Algorithm::Oracle,
        Algorithm::Clique,
        Algorithm::Cograph,
        Algorithm::Treewidth,
        Algorithm::NeighbourhoodDiversity,
        Algorithm::ModularWidth,
        Algorithm::DistanceToClique,
        Algorithm::DistanceToCluster,
        Algorithm::VertexIntegrity,
        Algorithm::ThreePathCover,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Algorithm::Oracle => "oracle",
            Algorithm::Clique => "clique",
            Algorithm::Cograph => "cograph",
            Algorithm::Treewidth => "treewidth",
            Algorithm::NeighbourhoodDiversity => "nd",
            Algorithm::ModularWidth => "mw",
            Algorithm::DistanceToClique => "dclique",
            Algorithm::DistanceToCluster => "dcluster",
            Algorithm::VertexIntegrity => "vi",
            Algorithm::ThreePathCover => "3pvc",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.tag() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown algorithm {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Auto,
    Forced(Algorithm),
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "auto" {
            Ok(Strategy::Auto)
        } else {
            s.parse().map(Strategy::Forced)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Yes => "yes",
            Answer::No => "no",
            Answer::Unknown => "unknown",
        })
    }
}

/// Parameter limits under which the automatic strategy picks a solver.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Thresholds {
    pub diversity: usize,
    /// Distance to clique or to cluster.
    pub modulator: usize,
    /// 3-path vertex cover.
    pub cover: usize,
    pub integrity: usize,
    pub width: usize,
    /// Largest graph handed to the exhaustive search.
    pub oracle_vertices: usize,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds { diversity: 12, modulator: 6, cover: 6, integrity: 6, width: 4, oracle_vertices: 18 }
    }
}

impl Thresholds {
    fn budgets(&self) -> Budgets {
        Budgets {
            vc: self.cover,
            pvc3: self.cover,
            pvc4: self.cover,
            dclique: self.modulator,
            dcluster: self.modulator,
            nd: self.diversity,
            vi: self.integrity,
            tw: self.width,
        }
    }

    /// Solvers the automatic strategy may use, in priority order.
    pub fn candidates(&self, instance: &Instance, params: &ParameterReport) -> Vec<Algorithm> {
        let within = |value: Option<usize>, limit: usize| value.is_some_and(|v| v <= limit);
        let mut picks = Vec::new();
        if instance.graph().is_complete() {
            picks.push(Algorithm::Clique);
        }
        if params.cograph {
            picks.push(Algorithm::Cograph);
        }
        if within(params.nd, self.diversity) {
            picks.push(Algorithm::NeighbourhoodDiversity);
        }
        if within(params.dclique, self.modulator) {
            picks.push(Algorithm::DistanceToClique);
        }
        if within(params.dcluster, self.modulator) {
            picks.push(Algorithm::DistanceToCluster);
        }
        if within(params.pvc3, self.cover) {
            picks.push(Algorithm::ThreePathCover);
        }
        if within(params.vi, self.integrity) {
            picks.push(Algorithm::VertexIntegrity);
        }
        if within(params.tw, self.width) {
            picks.push(Algorithm::Treewidth);
        }
        if instance.vertex_count() <= self.oracle_vertices {
            picks.push(Algorithm::Oracle);
        }
        picks
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolveReport {
    pub digest: String,
    pub n: usize,
    pub m: usize,
    pub p: usize,
    /// The solver whose answer is reported; `None` if nothing applied.
    pub algorithm: Option<Algorithm>,
    pub answer: Answer,
    pub certificate: Option<Partition>,
    pub parameters: Option<ParameterReport>,
    pub counters: Counters,
    pub millis: u64,
    /// Why the answer is unknown, or which solvers handed the instance on.
    pub notes: Vec<String>,
}

impl SolveReport {
    fn new(instance: &Instance) -> Self {
        SolveReport {
            digest: instance_digest(instance),
            n: instance.vertex_count(),
            m: instance.graph().edge_count(),
            p: instance.parts(),
            algorithm: None,
            answer: Answer::Unknown,
            certificate: None,
            parameters: None,
            counters: Counters::default(),
            millis: 0,
            notes: Vec::new(),
        }
    }

    pub fn algorithm_tag(&self) -> &'static str {
        self.algorithm.map_or("none", Algorithm::tag)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "instance {} n={} m={} p={}", self.digest, self.n, self.m, self.p);
        let _ = writeln!(out, "algorithm {}", self.algorithm_tag());
        let _ = writeln!(out, "answer {}", self.answer);
        let c = &self.counters;
        let _ = writeln!(out, "counters nodes={} states={} variables={}", c.nodes, c.states, c.variables);
        let _ = writeln!(out, "millis {}", self.millis);
        for note in &self.notes {
            let _ = writeln!(out, "note {note}");
        }
        if let Some(params) = &self.parameters {
            out.push_str(&params.to_text());
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// First 16 hex digits of the SHA-256 of the serialized instance.
pub fn instance_digest(instance: &Instance) -> String {
    let hash = Sha256::digest(serialize_instance(instance, &[]).as_bytes());
    hash.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

pub fn dispatch(instance: &Instance, strategy: Strategy, limits: &SearchLimits) -> Result<SolveReport> {
    dispatch_with(instance, strategy, limits, &Thresholds::default())
}

/// Runs the named solver, or under `Auto` the first applicable solver in
/// priority order. A solver that hands the instance back is followed by the
/// next candidate; an exhausted budget ends the run with `unknown`.
pub fn dispatch_with(
    instance: &Instance,
    strategy: Strategy,
    limits: &SearchLimits,
    thresholds: &Thresholds,
) -> Result<SolveReport> {
    let started = Instant::now();
    let mut report = SolveReport::new(instance);
    let mut search = Search::new(limits);
    let candidates = match strategy {
        Strategy::Forced(algorithm) => vec![algorithm],
        Strategy::Auto => {
            let params = parameter_report(instance.graph(), &thresholds.budgets());
            let candidates = thresholds.candidates(instance, &params);
            report.parameters = Some(params);
            candidates
        }
    };
    for algorithm in candidates {
        report.algorithm = Some(algorithm);
        match run(instance, algorithm, &mut search) {
            Ok(Some(partition)) => {
                if verify_partition(instance, &partition)?.is_valid() {
                    report.answer = Answer::Yes;
                    report.certificate = Some(partition);
                } else {
                    report.notes.push(format!("{algorithm}: certificate failed verification"));
                }
                break;
            }
            Ok(None) => {
                report.answer = Answer::No;
                break;
            }
            Err(Error::BudgetExceeded) => {
                report.notes.push(format!("{algorithm}: search budget exceeded"));
                break;
            }
            Err(err @ (Error::Delegated(_) | Error::Inconclusive(_))) => {
                report.notes.push(format!("{algorithm}: {err}"));
                report.algorithm = None;
            }
            Err(err) => return Err(err),
        }
    }
    if report.algorithm.is_none() && report.notes.is_empty() {
        report.notes.push("no solver applies within the thresholds".into());
    }
    report.counters = search.counters;
    report.millis = started.elapsed().as_millis() as u64;
    Ok(report)
}

/// Computes what `algorithm` needs and runs it.
fn run(instance: &Instance, algorithm: Algorithm, search: &mut Search) -> Result<Option<Partition>> {
    let graph = instance.graph();
    let budget = graph.vertex_count();
    let modulator = |family: Family| {
        find_modulator(graph, family, budget)
            .map(|report| report.modulator)
            .ok_or_else(|| Error::Precondition(format!("no {family} modulator within {budget}")))
    };
    match algorithm {
        Algorithm::Oracle => solve_exact_in(instance, search),
        Algorithm::Clique => solve_clique(instance).map(Some),
        Algorithm::Cograph => {
            let cotree = build_cotree(graph).ok_or_else(|| Error::Precondition("graph is not a cograph".into()))?;
            solve_cograph_in(instance, &cotree, search)
        }
        Algorithm::Treewidth => {
            let decomposition = compute_nice_tree_decomposition(graph, budget)
                .ok_or_else(|| Error::Precondition(format!("no tree decomposition of width {budget}")))?;
            solve_treewidth_in(instance, &decomposition, search)
        }
        Algorithm::NeighbourhoodDiversity => {
            solve_neighbourhood_diversity_in(instance, &neighbourhood_diversity(graph), search)
        }
        Algorithm::ModularWidth => solve_modular_width_in(instance, search),
        Algorithm::DistanceToClique => solve_clique_modulator_in(instance, &modulator(Family::ToClique)?, search),
        Algorithm::DistanceToCluster => solve_cluster_modulator_in(instance, &modulator(Family::ToCluster)?, search),
        Algorithm::ThreePathCover => solve_three_pvc_in(instance, &modulator(Family::PathCover(3))?, search),
        Algorithm::VertexIntegrity => {
            let (witness, k) = vertex_integrity(graph, budget)
                .ok_or_else(|| Error::Precondition(format!("vertex integrity exceeds {budget}")))?;
            solve_vertex_integrity_in(instance, &witness, k, search)
        }
    }
}

/// Races the oracle against the automatic pick and keeps the first definite
/// answer; the slower search is cancelled. The caller's cancel flag is
/// replaced by a shared one.
pub fn dispatch_portfolio(instance: &Instance, limits: &SearchLimits, thresholds: &Thresholds) -> Result<SolveReport> {
    let cancel = Arc::new(AtomicBool::new(false));
    let limits = limits.clone().with_cancel(Arc::clone(&cancel));
    let (tx, rx) = mpsc::channel();
    std::thread::scope(|scope| {
        for strategy in [Strategy::Auto, Strategy::Forced(Algorithm::Oracle)] {
            let tx = tx.clone();
            let limits = &limits;
            scope.spawn(move || {
                let _ = tx.send(dispatch_with(instance, strategy, limits, thresholds));
            });
        }
        drop(tx);
        let first = rx.recv().expect("a racer reports");
        if matches!(&first, Ok(r) if r.answer != Answer::Unknown) {
            cancel.store(true, Ordering::Relaxed);
            return first;
        }
        let second = rx.recv().expect("both racers report");
        match (&first, &second) {
            (_, Ok(r)) if r.answer != Answer::Unknown => second,
            (Err(_), Ok(_)) => second,
            _ => first,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn instance(graph: Graph, p: usize) -> Instance {
        Instance::new(graph, p).unwrap()
    }

    #[test]
    fn clique_goes_to_clique_solver() {
        let report = dispatch(&instance(Graph::complete(10), 3), Strategy::Auto, &SearchLimits::default()).unwrap();
        assert_eq!(report.algorithm, Some(Algorithm::Clique));
        assert_eq!(report.answer, Answer::Yes);
        assert_eq!(report.certificate.unwrap().sizes(), vec![4, 3, 3]);
    }

    #[test]
    fn star_has_no_even_split() {
        let report = dispatch(&instance(Graph::star(3), 2), Strategy::Auto, &SearchLimits::default()).unwrap();
        assert_eq!(report.answer, Answer::No);
        assert!(report.certificate.is_none());
    }

    #[test]
    fn forced_precondition_is_an_error() {
        let forced = Strategy::Forced(Algorithm::Cograph);
        let err = dispatch(&instance(Graph::path(4), 2), forced, &SearchLimits::default()).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)), "{err}");
    }

    #[test]
    fn every_forced_solver_agrees_on_a_small_grid() {
        let inst = instance(Graph::grid(2, 3), 2);
        for algorithm in Algorithm::ALL {
            let result = dispatch(&inst, Strategy::Forced(algorithm), &SearchLimits::default());
            match algorithm {
                Algorithm::Clique | Algorithm::Cograph => assert!(result.is_err()),
                _ => assert_eq!(result.unwrap().answer, Answer::Yes, "{algorithm}"),
            }
        }
    }

    #[test]
    fn budget_failure_is_unknown() {
        let inst = instance(Graph::grid(5, 5), 5);
        let forced = Strategy::Forced(Algorithm::Oracle);
        let report = dispatch(&inst, forced, &SearchLimits::nodes(10)).unwrap();
        assert_eq!(report.answer, Answer::Unknown);
        assert_eq!(report.algorithm, Some(Algorithm::Oracle));
    }

    #[test]
    fn delegation_falls_through() {
        // Vertex integrity 3 but 5 parts: the integrity solver hands over.
        let thresholds = Thresholds { diversity: 0, modulator: 0, cover: 0, ..Thresholds::default() };
        let inst = instance(Graph::path(9), 3);
        let report = dispatch_with(&inst, Strategy::Auto, &SearchLimits::default(), &thresholds).unwrap();
        assert_eq!(report.algorithm, Some(Algorithm::VertexIntegrity));
        let inst = instance(Graph::path(9), 9);
        let report = dispatch_with(&inst, Strategy::Auto, &SearchLimits::default(), &thresholds).unwrap();
        assert_eq!(report.answer, Answer::Yes);
        assert_eq!(report.algorithm, Some(Algorithm::Treewidth));
        assert!(report.notes[0].starts_with("vi: delegated"), "{:?}", report.notes);
    }

    #[test]
    fn portfolio_returns_a_definite_answer() {
        let inst = instance(Graph::cycle(8), 4);
        let report = dispatch_portfolio(&inst, &SearchLimits::default(), &Thresholds::default()).unwrap();
        assert_eq!(report.answer, Answer::Yes);
    }

    #[test]
    fn tags_round_trip() {
        for algorithm in Algorithm::ALL {
            assert_eq!(algorithm.tag().parse::<Algorithm>().unwrap(), algorithm);
        }
        assert_eq!("auto".parse::<Strategy>().unwrap(), Strategy::Auto);
        assert!("fast".parse::<Strategy>().is_err());
    }

    #[test]
    fn digest_depends_on_the_part_count() {
        let inst = instance(Graph::path(3), 1);
        assert_eq!(instance_digest(&inst).len(), 16);
        assert_ne!(instance_digest(&inst), instance_digest(&instance(Graph::path(3), 3)));
    }
}

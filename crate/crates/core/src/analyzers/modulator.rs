//! Minimum modulators to simple graph families by bounded-depth branching.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::Error;
use crate::graph::{Graph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    VertexCover,
    /// No path on `d` vertices survives.
    PathCover(usize),
    ToClique,
    ToCluster,
    ToDisjointPaths,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::VertexCover => f.write_str("vertex-cover"),
            Family::PathCover(d) => write!(f, "{d}-path-cover"),
            Family::ToClique => f.write_str("to-clique"),
            Family::ToCluster => f.write_str("to-cluster"),
            Family::ToDisjointPaths => f.write_str("to-disjoint-paths"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "vertex-cover" => Ok(Family::VertexCover),
            "to-clique" => Ok(Family::ToClique),
            "to-cluster" => Ok(Family::ToCluster),
            "to-disjoint-paths" => Ok(Family::ToDisjointPaths),
            _ => s
                .strip_suffix("-path-cover")
                .and_then(|d| d.parse().ok())
                .filter(|&d| d >= 2)
                .map(Family::PathCover)
                .ok_or_else(|| Error::InvalidArgument(format!("unknown modulator family {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModulatorReport {
    pub family: Family,
    pub modulator: Vec<Vertex>,
    pub size: usize,
}

/// A minimum modulator of size at most `budget`, or `None`.
pub fn find_modulator(graph: &Graph, family: Family, budget: usize) -> Option<ModulatorReport> {
    let mut removed = vec![false; graph.vertex_count()];
    for k in 0..=budget.min(graph.vertex_count()) {
        if branch(graph, family, &mut removed, k) {
            let modulator: Vec<Vertex> = graph.vertices().filter(|&v| removed[v]).collect();
            let size = modulator.len();
            return Some(ModulatorReport { family, modulator, size });
        }
    }
    None
}

fn branch(graph: &Graph, family: Family, removed: &mut [bool], k: usize) -> bool {
    let Some(witness) = violation(graph, family, removed) else {
        return true;
    };
    if k == 0 {
        return false;
    }
    for v in witness {
        removed[v] = true;
        if branch(graph, family, removed, k - 1) {
            return true;
        }
        removed[v] = false;
    }
    false
}

/// Whether deleting `modulator` leaves a member of `family`.
pub fn is_in_family(graph: &Graph, family: Family, modulator: &[Vertex]) -> bool {
    let mut removed = vec![false; graph.vertex_count()];
    for &v in modulator {
        removed[v] = true;
    }
    violation(graph, family, &removed).is_none()
}

/// A vertex set of which every modulator must delete at least one vertex.
fn violation(graph: &Graph, family: Family, removed: &[bool]) -> Option<Vec<Vertex>> {
    let alive = |v: Vertex| !removed[v];
    match family {
        Family::VertexCover => find_path(graph, removed, 2),
        Family::PathCover(d) => find_path(graph, removed, d),
        Family::ToClique => {
            for u in graph.vertices().filter(|&u| alive(u)) {
                for v in (u + 1..graph.vertex_count()).filter(|&v| alive(v)) {
                    if !graph.has_edge(u, v) {
                        return Some(vec![u, v]);
                    }
                }
            }
            None
        }
        Family::ToCluster => {
            for v in graph.vertices().filter(|&v| alive(v)) {
                let nbrs: Vec<Vertex> = graph.neighbors(v).iter().copied().filter(|&w| alive(w)).collect();
                for (i, &a) in nbrs.iter().enumerate() {
                    for &b in &nbrs[i + 1..] {
                        if !graph.has_edge(a, b) {
                            return Some(vec![a, v, b]);
                        }
                    }
                }
            }
            None
        }
        Family::ToDisjointPaths => {
            for v in graph.vertices().filter(|&v| alive(v)) {
                let nbrs: Vec<Vertex> = graph.neighbors(v).iter().copied().filter(|&w| alive(w)).collect();
                if nbrs.len() >= 3 {
                    return Some(vec![v, nbrs[0], nbrs[1], nbrs[2]]);
                }
            }
            // Maximum degree is now at most two, so a cyclic component is a
            // whole cycle and deleting any one of its vertices is equivalent.
            graph
                .components_where(alive)
                .into_iter()
                .find(|comp| {
                    let edges: usize =
                        comp.iter().map(|&v| graph.neighbors(v).iter().filter(|&&w| alive(w)).count()).sum();
                    edges / 2 >= comp.len()
                })
                .map(|comp| vec![comp[0]])
        }
    }
}

/// Some simple path on `d` vertices avoiding `removed`.
fn find_path(graph: &Graph, removed: &[bool], d: usize) -> Option<Vec<Vertex>> {
    let mut on_path = removed.to_vec();
    let mut path = Vec::with_capacity(d);
    for s in graph.vertices() {
        if removed[s] {
            continue;
        }
        on_path[s] = true;
        path.push(s);
        if extend_path(graph, &mut on_path, &mut path, d) {
            return Some(path);
        }
        path.pop();
        on_path[s] = false;
    }
    None
}

fn extend_path(graph: &Graph, blocked: &mut [bool], path: &mut Vec<Vertex>, d: usize) -> bool {
    if path.len() == d {
        return true;
    }
    let last = *path.last().expect("path is non-empty");
    for &w in graph.neighbors(last) {
        if blocked[w] {
            continue;
        }
        blocked[w] = true;
        path.push(w);
        if extend_path(graph, blocked, path, d) {
            return true;
        }
        path.pop();
        blocked[w] = false;
    }
    false
}

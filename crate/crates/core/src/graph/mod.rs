//! Graph and instance representation, connectivity primitives and the
//! partition verifier.

pub(crate) mod io;
mod verify;

pub use io::{parse_instance, parse_solution, serialize_instance, serialize_solution, Solution};
pub use verify::{verify_partition, Verdict, Violation};

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Simple undirected graph on vertices `0..n` with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Graph {
    adjacency: Vec<Vec<Vertex>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph from an edge list, rejecting self-loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("edge ({u}, {v}) out of range for n = {n}")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (v, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidGraph(format!("duplicate edge at vertex {v}")));
            }
        }
        Ok(Graph { adjacency, edge_count: edges.len() })
    }

    /// Like [`Graph::from_edges`] but silently merges duplicate edges.
    pub fn from_edges_dedup(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut normalized: Vec<(Vertex, Vertex)> =
            edges.iter().map(|&(u, v)| if u < v { (u, v) } else { (v, u) }).collect();
        normalized.sort_unstable();
        normalized.dedup();
        Self::from_edges(n, &normalized)
    }

    pub fn empty(n: usize) -> Self {
        Graph { adjacency: vec![Vec::new(); n], edge_count: 0 }
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Self::from_edges(n, &edges).expect("complete graph is simple")
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Self::from_edges(n, &edges).expect("path is simple")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        edges.push((0, n - 1));
        Self::from_edges(n, &edges).expect("cycle is simple")
    }

    /// Star with centre 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        Self::from_edges(leaves + 1, &edges).expect("star is simple")
    }

    pub fn complete_bipartite(left: usize, right: usize) -> Self {
        let edges: Vec<_> = (0..left).flat_map(|u| (left..left + right).map(move |v| (u, v))).collect();
        Self::from_edges(left + right, &edges).expect("complete bipartite graph is simple")
    }

    pub fn grid(rows: usize, cols: usize) -> Self {
        let mut edges = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                let v = r * cols + c;
                if c + 1 < cols {
                    edges.push((v, v + 1));
                }
                if r + 1 < rows {
                    edges.push((v, v + cols));
                }
            }
        }
        Self::from_edges(rows * cols, &edges).expect("grid is simple")
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.adjacency.len()
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn is_complete(&self) -> bool {
        let n = self.vertex_count();
        self.adjacency.iter().all(|list| list.len() + 1 == n)
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() == 0 || self.components_avoiding(&[]).len() == 1
    }

    /// Whether the sub-graph induced by `subset` is connected. A single vertex
    /// is connected; the empty set is rejected.
    pub fn is_connected_subset(&self, subset: &[Vertex]) -> Result<bool> {
        if subset.is_empty() {
            return Err(Error::InvalidArgument("connectivity of an empty vertex set".into()));
        }
        let mut inside = vec![false; self.vertex_count()];
        for &v in subset {
            if v >= self.vertex_count() {
                return Err(Error::InvalidArgument(format!("vertex {v} out of range")));
            }
            inside[v] = true;
        }
        Ok(self.count_reached(subset[0], &inside) == count_true(&inside))
    }

    /// Unchecked variant used on hot paths; `subset` must be non-empty.
    pub(crate) fn connected_set(&self, subset: &[Vertex]) -> bool {
        let mut inside = vec![false; self.vertex_count()];
        for &v in subset {
            inside[v] = true;
        }
        self.count_reached(subset[0], &inside) == count_true(&inside)
    }

    fn count_reached(&self, start: Vertex, inside: &[bool]) -> usize {
        let mut seen = vec![false; self.vertex_count()];
        seen[start] = true;
        let mut stack = vec![start];
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &self.adjacency[u] {
                if inside[w] && !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count
    }

    /// Connected components of the graph after deleting `removed`, each sorted,
    /// ordered by minimum vertex.
    pub fn components_avoiding(&self, removed: &[Vertex]) -> Vec<Vec<Vertex>> {
        let mut blocked = vec![false; self.vertex_count()];
        for &v in removed {
            blocked[v] = true;
        }
        self.components_where(|v| !blocked[v])
    }

    /// Connected components of the sub-graph induced by vertices satisfying `keep`.
    pub fn components_where(&self, keep: impl Fn(Vertex) -> bool) -> Vec<Vec<Vertex>> {
        let n = self.vertex_count();
        let mut label = vec![usize::MAX; n];
        let mut components = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..n {
            if label[s] != usize::MAX || !keep(s) {
                continue;
            }
            let id = components.len();
            label[s] = id;
            queue.push_back(s);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &w in &self.adjacency[u] {
                    if label[w] == usize::MAX && keep(w) {
                        label[w] = id;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            components.push(comp);
        }
        components
    }

    /// Induced sub-graph on `vertices` (relabelled `0..len` in the given order).
    pub fn induced(&self, vertices: &[Vertex]) -> Graph {
        let mut index = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adjacency[v] {
                let j = index[w];
                if j != usize::MAX && i < j {
                    edges.push((i, j));
                }
            }
        }
        Graph::from_edges(vertices.len(), &edges).expect("induced sub-graph is simple")
    }

    pub fn complement(&self) -> Graph {
        let n = self.vertex_count();
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if !self.has_edge(u, v) {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(n, &edges).expect("complement is simple")
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[Vertex]) -> Graph {
        let edges: Vec<_> = self.edges().map(|(u, v)| (perm[u], perm[v])).collect();
        Graph::from_edges(self.vertex_count(), &edges).expect("permutation preserves simplicity")
    }
}

fn count_true(flags: &[bool]) -> usize {
    flags.iter().filter(|&&b| b).count()
}

/// A connected graph together with the requested number of parts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    graph: Graph,
    parts: usize,
}

impl Instance {
    pub fn new(graph: Graph, parts: usize) -> Result<Self> {
        let n = graph.vertex_count();
        if n == 0 {
            return Err(Error::InvalidInstance("graph has no vertices".into()));
        }
        if parts == 0 || parts > n {
            return Err(Error::InvalidInstance(format!("p = {parts} outside 1..={n}")));
        }
        if !graph.is_connected() {
            return Err(Error::InvalidInstance("graph is disconnected".into()));
        }
        Ok(Instance { graph, parts })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn parts(&self) -> usize {
        self.parts
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn bounds(&self) -> SizeBounds {
        SizeBounds::new(self.graph.vertex_count(), self.parts).expect("instance invariant")
    }
}

/// Admissible part sizes for `n` vertices split into `p` parts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SizeBounds {
    pub small: usize,
    pub large: usize,
    pub num_large: usize,
    pub parts: usize,
}

impl SizeBounds {
    pub fn new(n: usize, p: usize) -> Result<Self> {
        if p == 0 || p > n {
            return Err(Error::InvalidArgument(format!("p = {p} outside 1..={n}")));
        }
        let small = n / p;
        let num_large = n % p;
        let large = if num_large == 0 { small } else { small + 1 };
        Ok(SizeBounds { small, large, num_large, parts: p })
    }

    pub fn num_small(&self) -> usize {
        self.parts - self.num_large
    }

    /// True when the two admissible sizes differ.
    pub fn is_split(&self) -> bool {
        self.large != self.small
    }

    /// Whether a closed part of `size` is admissible, and if so whether it
    /// counts against the large-part budget.
    pub fn classify(&self, size: usize) -> Option<bool> {
        if size == self.large && self.is_split() {
            Some(true)
        } else if size == self.small {
            Some(false)
        } else {
            None
        }
    }

    /// Admissible `(size, is_large)` pairs.
    pub fn sizes(&self) -> Vec<(usize, bool)> {
        if self.is_split() {
            vec![(self.small, false), (self.large, true)]
        } else {
            vec![(self.small, false)]
        }
    }

    /// Whether `count` vertices split exactly into parts of admissible size
    /// with at most `large_budget` large parts; returns the feasible
    /// `(small_parts, large_parts)` pairs.
    pub fn decompositions(&self, count: usize, large_budget: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        if !self.is_split() {
            if self.small > 0 && count.is_multiple_of(self.small) {
                out.push((count / self.small, 0));
            }
            return out;
        }
        let mut large_parts = 0;
        while large_parts <= large_budget && large_parts * self.large <= count {
            let rest = count - large_parts * self.large;
            if rest.is_multiple_of(self.small) {
                out.push((rest / self.small, large_parts));
            }
            large_parts += 1;
        }
        out
    }
}

/// Vertex-to-part assignment with part ids `0..p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Partition {
    assignment: Vec<usize>,
}

impl Partition {
    pub fn new(assignment: Vec<usize>) -> Self {
        Partition { assignment }
    }

    /// Builds a partition from explicit parts; part ids follow list order.
    pub fn from_parts(n: usize, parts: &[Vec<Vertex>]) -> Result<Self> {
        let mut assignment = vec![usize::MAX; n];
        for (id, part) in parts.iter().enumerate() {
            for &v in part {
                if v >= n || assignment[v] != usize::MAX {
                    return Err(Error::InvalidArgument(format!("vertex {v} missing or assigned twice")));
                }
                assignment[v] = id;
            }
        }
        if let Some(v) = assignment.iter().position(|&a| a == usize::MAX) {
            return Err(Error::InvalidArgument(format!("vertex {v} not assigned")));
        }
        Ok(Partition { assignment })
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn part_of(&self, v: Vertex) -> usize {
        self.assignment[v]
    }

    pub fn part_count(&self) -> usize {
        self.assignment.iter().max().map_or(0, |&m| m + 1)
    }

    /// Members of each part, sorted.
    pub fn parts(&self) -> Vec<Vec<Vertex>> {
        let mut parts = vec![Vec::new(); self.part_count()];
        for (v, &part) in self.assignment.iter().enumerate() {
            parts[part].push(v);
        }
        parts
    }

    /// Renumbers parts by order of their minimum vertex.
    pub fn canonical(&self) -> Partition {
        let mut relabel = vec![usize::MAX; self.part_count()];
        let mut next = 0;
        let assignment = self
            .assignment
            .iter()
            .map(|&a| {
                if relabel[a] == usize::MAX {
                    relabel[a] = next;
                    next += 1;
                }
                relabel[a]
            })
            .collect();
        Partition { assignment }
    }

    /// Sorted part sizes, largest first.
    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.parts().iter().map(Vec::len).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes
    }
}

/// Splits `items` into consecutive chunks: the first `bounds.num_large`
/// chunks of size `large`, the rest of size `small`.
pub(crate) fn chunk_sizes(bounds: &SizeBounds) -> impl Iterator<Item = usize> + '_ {
    (0..bounds.parts).map(move |i| if i < bounds.num_large { bounds.large } else { bounds.small })
}

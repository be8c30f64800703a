//! Tree decompositions from elimination orders, and their nice form.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeKind {
    Leaf,
    Introduce(Vertex),
    Forget(Vertex),
    Join,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NiceNode {
    /// Sorted.
    pub bag: Vec<Vertex>,
    pub kind: NodeKind,
    pub children: Vec<usize>,
}

/// Nodes are stored children-first, so index order is a post-order and the
/// root is the last node.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NiceTreeDecomposition {
    pub nodes: Vec<NiceNode>,
}

impl NiceTreeDecomposition {
    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn width(&self) -> usize {
        self.nodes.iter().map(|n| n.bag.len()).max().unwrap_or(1).saturating_sub(1)
    }

    /// Checks the nice-node rules and the three tree-decomposition conditions.
    pub fn validate(&self, graph: &Graph) -> Result<()> {
        let bad = |msg: String| Err(Error::Precondition(format!("invalid nice decomposition: {msg}")));
        if self.nodes.is_empty() {
            return bad("no nodes".into());
        }
        let n = graph.vertex_count();
        let mut parent = vec![usize::MAX; self.nodes.len()];
        for (i, node) in self.nodes.iter().enumerate() {
            if node.bag.windows(2).any(|w| w[0] >= w[1]) || node.bag.iter().any(|&v| v >= n) {
                return bad(format!("node {i} bag is not a sorted vertex set"));
            }
            for &c in &node.children {
                if c >= i || parent[c] != usize::MAX {
                    return bad(format!("node {i} has child {c} out of post-order"));
                }
                parent[c] = i;
            }
            let child_bag = |k: usize| &self.nodes[node.children[k]].bag;
            let ok = match node.kind {
                NodeKind::Leaf => node.children.is_empty() && node.bag.is_empty(),
                NodeKind::Introduce(v) => {
                    node.children.len() == 1 && !child_bag(0).contains(&v) && with(child_bag(0), v) == node.bag
                }
                NodeKind::Forget(v) => {
                    node.children.len() == 1 && !node.bag.contains(&v) && with(&node.bag, v) == *child_bag(0)
                }
                NodeKind::Join => node.children.len() == 2 && *child_bag(0) == node.bag && *child_bag(1) == node.bag,
            };
            if !ok {
                return bad(format!("node {i} breaks the {:?} rule", node.kind));
            }
        }
        let root = self.root();
        if (0..root).any(|i| parent[i] == usize::MAX) {
            return bad("more than one root".into());
        }
        if !self.nodes[root].bag.is_empty() {
            return bad("root bag is not empty".into());
        }
        // Each vertex's bags form one sub-tree: exactly one topmost occurrence.
        let mut tops = vec![0usize; n];
        let mut seen = vec![false; n];
        for (i, node) in self.nodes.iter().enumerate() {
            for &v in &node.bag {
                seen[v] = true;
                if parent[i] == usize::MAX || !self.nodes[parent[i]].bag.contains(&v) {
                    tops[v] += 1;
                }
            }
        }
        if let Some(v) = (0..n).find(|&v| !seen[v]) {
            return bad(format!("vertex {v} is in no bag"));
        }
        if let Some(v) = (0..n).find(|&v| tops[v] != 1) {
            return bad(format!("bags containing vertex {v} are not connected"));
        }
        let mut covered: HashSet<(Vertex, Vertex)> = HashSet::new();
        for node in &self.nodes {
            for (i, &u) in node.bag.iter().enumerate() {
                for &v in &node.bag[i + 1..] {
                    covered.insert((u, v));
                }
            }
        }
        if let Some(e) = graph.edges().find(|e| !covered.contains(e)) {
            return bad(format!("edge {e:?} is in no bag"));
        }
        Ok(())
    }
}

fn with(bag: &[Vertex], v: Vertex) -> Vec<Vertex> {
    let mut out = bag.to_vec();
    out.push(v);
    out.sort_unstable();
    out
}

const EXACT_LIMIT: usize = 20;
const EXACT_STATE_CAP: usize = 1 << 21;

/// A nice decomposition of width at most `width_budget`, if one is found.
/// Graphs with at most 20 vertices get an optimal width; larger ones use the
/// min-fill heuristic.
pub fn compute_nice_tree_decomposition(graph: &Graph, width_budget: usize) -> Option<NiceTreeDecomposition> {
    let order = elimination_order(graph, width_budget)?;
    let nice = nicify(graph, &order);
    (nice.width() <= width_budget).then_some(nice)
}

fn elimination_order(graph: &Graph, width_budget: usize) -> Option<Vec<Vertex>> {
    let n = graph.vertex_count();
    if n == 0 {
        return None;
    }
    let heuristic = min_fill_order(graph);
    let heuristic_width = order_width(graph, &heuristic);
    if n > EXACT_LIMIT {
        return (heuristic_width <= width_budget).then_some(heuristic);
    }
    let lower = degeneracy(graph);
    if heuristic_width <= lower {
        return (heuristic_width <= width_budget).then_some(heuristic);
    }
    let exact = ExactSearch::new(graph);
    for k in lower..heuristic_width.min(width_budget + 1) {
        match exact.order(k) {
            Ok(Some(order)) => return Some(order),
            Ok(None) => {}
            Err(()) => break,
        }
    }
    (heuristic_width <= width_budget).then_some(heuristic)
}

fn degeneracy(graph: &Graph) -> usize {
    let n = graph.vertex_count();
    let mut degree: Vec<usize> = graph.vertices().map(|v| graph.degree(v)).collect();
    let mut gone = vec![false; n];
    let mut best = 0;
    for _ in 0..n {
        let v = (0..n).filter(|&v| !gone[v]).min_by_key(|&v| degree[v]).expect("vertex left");
        best = best.max(degree[v]);
        gone[v] = true;
        for &w in graph.neighbors(v) {
            if !gone[w] {
                degree[w] -= 1;
            }
        }
    }
    best
}

/// Greedy order eliminating the vertex whose neighbourhood needs the fewest
/// fill edges; ties by degree, then index.
fn min_fill_order(graph: &Graph) -> Vec<Vertex> {
    let n = graph.vertex_count();
    let mut adj: Vec<Vec<bool>> = vec![vec![false; n]; n];
    for (u, v) in graph.edges() {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best: Option<(usize, usize, Vertex)> = None;
        for v in (0..n).filter(|&v| alive[v]) {
            let nbrs: Vec<Vertex> = (0..n).filter(|&w| alive[w] && adj[v][w]).collect();
            let mut fill = 0;
            for (i, &a) in nbrs.iter().enumerate() {
                fill += nbrs[i + 1..].iter().filter(|&&b| !adj[a][b]).count();
            }
            let key = (fill, nbrs.len(), v);
            if best.is_none_or(|b| key < b) {
                best = Some(key);
            }
        }
        let (_, _, v) = best.expect("vertex left");
        let nbrs: Vec<Vertex> = (0..n).filter(|&w| alive[w] && adj[v][w]).collect();
        for &a in &nbrs {
            for &b in &nbrs {
                if a != b {
                    adj[a][b] = true;
                }
            }
        }
        alive[v] = false;
        order.push(v);
    }
    order
}

fn order_width(graph: &Graph, order: &[Vertex]) -> usize {
    eliminate(graph, order).iter().map(|(_, higher)| higher.len()).max().unwrap_or(0)
}

/// For each vertex in elimination order, its later neighbours in the filled graph.
fn eliminate(graph: &Graph, order: &[Vertex]) -> Vec<(Vertex, Vec<Vertex>)> {
    let n = graph.vertex_count();
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut higher: Vec<Vec<Vertex>> =
        graph.vertices().map(|v| graph.neighbors(v).iter().copied().filter(|&w| pos[w] > pos[v]).collect()).collect();
    let mut out = Vec::with_capacity(n);
    for &v in order {
        let mut nbrs = std::mem::take(&mut higher[v]);
        nbrs.sort_unstable();
        nbrs.dedup();
        for &a in &nbrs {
            for &b in &nbrs {
                if a != b && pos[b] > pos[a] {
                    higher[a].push(b);
                }
            }
        }
        out.push((v, nbrs));
    }
    out
}

struct ExactSearch {
    n: usize,
    adj: Vec<u32>,
}

impl ExactSearch {
    fn new(graph: &Graph) -> Self {
        let adj = graph.vertices().map(|v| graph.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w)).collect();
        ExactSearch { n: graph.vertex_count(), adj }
    }

    /// Neighbours of `v` once the set `gone` has been eliminated.
    fn neighbours(&self, v: usize, gone: u32) -> u32 {
        let mut reach = self.adj[v];
        let mut visited = 1u32 << v;
        let mut frontier = reach & gone;
        while frontier != 0 {
            let x = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            visited |= 1 << x;
            reach |= self.adj[x];
            frontier |= self.adj[x] & gone & !visited;
        }
        reach & !gone & !(1 << v)
    }

    /// An elimination order of width at most `k`; `Err` when the state cap is hit.
    fn order(&self, k: usize) -> std::result::Result<Option<Vec<Vertex>>, ()> {
        let mut failed = HashSet::new();
        let mut order = Vec::new();
        if self.dfs(0, k, &mut failed, &mut order)? {
            let gone = order.iter().fold(0u32, |m, &v| m | 1 << v);
            order.extend((0..self.n).filter(|&v| gone & (1 << v) == 0));
            Ok(Some(order))
        } else {
            Ok(None)
        }
    }

    fn dfs(
        &self,
        gone: u32,
        k: usize,
        failed: &mut HashSet<u32>,
        order: &mut Vec<Vertex>,
    ) -> std::result::Result<bool, ()> {
        let left = self.n - gone.count_ones() as usize;
        if left <= k + 1 {
            return Ok(true);
        }
        if failed.contains(&gone) {
            return Ok(false);
        }
        if failed.len() >= EXACT_STATE_CAP {
            return Err(());
        }
        let mut candidates = Vec::new();
        for v in (0..self.n).filter(|&v| gone & (1 << v) == 0) {
            let nbrs = self.neighbours(v, gone);
            if nbrs.count_ones() as usize > k {
                continue;
            }
            if self.is_clique(nbrs, gone) {
                // A simplicial vertex of low degree can always go first.
                candidates = vec![v];
                break;
            }
            candidates.push(v);
        }
        for v in candidates {
            order.push(v);
            if self.dfs(gone | 1 << v, k, failed, order)? {
                return Ok(true);
            }
            order.pop();
        }
        failed.insert(gone);
        Ok(false)
    }

    fn is_clique(&self, set: u32, gone: u32) -> bool {
        let mut rest = set;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let others = set & !(1 << u);
            if self.neighbours(u, gone) & others != others {
                return false;
            }
        }
        true
    }
}

/// Builds the nice decomposition for an elimination order.
fn nicify(graph: &Graph, order: &[Vertex]) -> NiceTreeDecomposition {
    let n = graph.vertex_count();
    let eliminated = eliminate(graph, order);
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    // Bag i belongs to order[i]; its parent is the earliest later neighbour.
    let bags: Vec<Vec<Vertex>> = eliminated.iter().map(|(v, higher)| with(higher, *v)).collect();
    let mut children = vec![Vec::new(); n];
    let mut roots = Vec::new();
    for (i, (_, higher)) in eliminated.iter().enumerate() {
        match higher.iter().map(|&w| pos[w]).min() {
            Some(parent) => children[parent].push(i),
            None => roots.push(i),
        }
    }
    let mut builder = Builder { nodes: Vec::new() };
    let tops: Vec<usize> = roots
        .iter()
        .map(|&r| {
            let top = builder.subtree(r, &bags, &children);
            builder.transition(top, &bags[r], &[])
        })
        .collect();
    let mut acc = tops[0];
    for &t in &tops[1..] {
        acc = builder.push(Vec::new(), NodeKind::Join, vec![acc, t]);
    }
    NiceTreeDecomposition { nodes: builder.nodes }
}

struct Builder {
    nodes: Vec<NiceNode>,
}

impl Builder {
    fn push(&mut self, bag: Vec<Vertex>, kind: NodeKind, children: Vec<usize>) -> usize {
        self.nodes.push(NiceNode { bag, kind, children });
        self.nodes.len() - 1
    }

    /// Nice sub-tree whose top node carries exactly `bags[t]`.
    fn subtree(&mut self, t: usize, bags: &[Vec<Vertex>], children: &[Vec<usize>]) -> usize {
        let bag = &bags[t];
        let tops: Vec<usize> = children[t]
            .iter()
            .map(|&c| {
                let top = self.subtree(c, bags, children);
                self.transition(top, &bags[c], bag)
            })
            .collect();
        if tops.is_empty() {
            let leaf = self.push(Vec::new(), NodeKind::Leaf, Vec::new());
            return self.transition(leaf, &[], bag);
        }
        let mut acc = tops[0];
        for &top in &tops[1..] {
            acc = self.push(bag.clone(), NodeKind::Join, vec![acc, top]);
        }
        acc
    }

    /// Forget chain then introduce chain from bag `from` to bag `to`.
    fn transition(&mut self, mut node: usize, from: &[Vertex], to: &[Vertex]) -> usize {
        let mut bag = from.to_vec();
        for &v in from.iter().filter(|v| !to.contains(v)) {
            bag.retain(|&w| w != v);
            node = self.push(bag.clone(), NodeKind::Forget(v), vec![node]);
        }
        for &v in to.iter().filter(|v| !from.contains(v)) {
            bag = with(&bag, v);
            node = self.push(bag.clone(), NodeKind::Introduce(v), vec![node]);
        }
        node
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn width_of(graph: &Graph) -> usize {
        let td = compute_nice_tree_decomposition(graph, graph.vertex_count()).unwrap();
        td.validate(graph).unwrap();
        td.width()
    }

    #[test]
    fn known_widths() {
        assert_eq!(width_of(&Graph::path(5)), 1);
        assert_eq!(width_of(&Graph::cycle(6)), 2);
        assert_eq!(width_of(&Graph::complete(4)), 3);
        assert_eq!(width_of(&Graph::grid(3, 3)), 3);
        assert_eq!(width_of(&Graph::empty(1)), 0);
    }

    #[test]
    fn budget_is_respected() {
        assert!(compute_nice_tree_decomposition(&Graph::complete(4), 2).is_none());
        assert!(compute_nice_tree_decomposition(&Graph::cycle(30), 2).is_some());
    }

    #[test]
    fn validator_rejects_missing_edge() {
        let g = Graph::path(3);
        let mut td = compute_nice_tree_decomposition(&g, 2).unwrap();
        let k3 = Graph::complete(3);
        assert!(td.validate(&k3).is_err());
        td.nodes.pop();
        assert!(td.validate(&g).is_err());
    }
}

//! Maximum matchings and the instances they solve outright.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{Graph, Instance, Partition, Vertex};

const NIL: usize = usize::MAX;

/// Hopcroft-Karp. Left and right ids are arbitrary; the result lists
/// `(left, right)` pairs in left input order.
pub fn bipartite_max_matching(left: &[Vertex], right: &[Vertex], edges: &[(Vertex, Vertex)]) -> Vec<(Vertex, Vertex)> {
    let index_of = |side: &[Vertex], v: Vertex| side.iter().position(|&w| w == v);
    let mut adj = vec![Vec::new(); left.len()];
    for &(u, v) in edges {
        if let (Some(i), Some(j)) = (index_of(left, u), index_of(right, v)) {
            adj[i].push(j);
        }
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    let pairs = hopcroft_karp(&adj, right.len());
    pairs.into_iter().map(|(i, j)| (left[i], right[j])).collect()
}

/// Maximum matching on adjacency lists `left -> right indices`.
pub(crate) fn hopcroft_karp(adj: &[Vec<usize>], right_count: usize) -> Vec<(usize, usize)> {
    let n = adj.len();
    let mut match_left = vec![NIL; n];
    let mut match_right = vec![NIL; right_count];
    let mut dist = vec![0usize; n];
    loop {
        // Layered BFS from free left vertices.
        let mut queue = VecDeque::new();
        for u in 0..n {
            if match_left[u] == NIL {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                match match_right[v] {
                    NIL => found = true,
                    w if dist[w] == usize::MAX => {
                        dist[w] = dist[u] + 1;
                        queue.push_back(w);
                    }
                    _ => {}
                }
            }
        }
        if !found {
            break;
        }
        for u in 0..n {
            if match_left[u] == NIL {
                augment(u, adj, &mut match_left, &mut match_right, &mut dist);
            }
        }
    }
    (0..n).filter(|&u| match_left[u] != NIL).map(|u| (u, match_left[u])).collect()
}

fn augment(u: usize, adj: &[Vec<usize>], ml: &mut [usize], mr: &mut [usize], dist: &mut [usize]) -> bool {
    for &v in &adj[u] {
        let w = mr[v];
        if w == NIL || (dist[w] == dist[u] + 1 && augment(w, adj, ml, mr, dist)) {
            ml[u] = v;
            mr[v] = u;
            return true;
        }
    }
    dist[u] = usize::MAX;
    false
}

/// Maximum matching in a general graph (Edmonds' blossom algorithm), as
/// pairs `(u, v)` with `u < v`, sorted.
pub fn max_matching(graph: &Graph) -> Vec<(Vertex, Vertex)> {
    let n = graph.vertex_count();
    let mut mate = vec![NIL; n];
    // Greedy start keeps the augmenting phase short.
    for (u, v) in graph.edges() {
        if mate[u] == NIL && mate[v] == NIL {
            mate[u] = v;
            mate[v] = u;
        }
    }
    let mut blossom = Blossom::new(graph);
    for root in 0..n {
        if mate[root] == NIL {
            if let Some(end) = blossom.find_path(root, &mate) {
                let mut v = end;
                while v != NIL {
                    let pv = blossom.parent[v];
                    let next = mate[pv];
                    mate[v] = pv;
                    mate[pv] = v;
                    v = next;
                }
            }
        }
    }
    (0..n).filter(|&u| mate[u] != NIL && u < mate[u]).map(|u| (u, mate[u])).collect()
}

struct Blossom<'a> {
    graph: &'a Graph,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
}

impl<'a> Blossom<'a> {
    fn new(graph: &'a Graph) -> Self {
        let n = graph.vertex_count();
        Blossom { graph, parent: vec![NIL; n], base: vec![0; n], used: vec![false; n], in_blossom: vec![false; n] }
    }

    fn lca(&self, mate: &[usize], mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; mate.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if mate[a] == NIL {
                break;
            }
            a = self.parent[mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[mate[b]];
        }
    }

    fn mark_path(&mut self, mate: &[usize], mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[mate[v]]] = true;
            self.parent[v] = child;
            child = mate[v];
            v = self.parent[mate[v]];
        }
    }

    /// BFS for an augmenting path from `root`; returns its free end.
    fn find_path(&mut self, root: usize, mate: &[usize]) -> Option<usize> {
        let n = mate.len();
        self.used.iter_mut().for_each(|u| *u = false);
        self.parent.iter_mut().for_each(|p| *p = NIL);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &to in self.graph.neighbors(v) {
                if self.base[v] == self.base[to] || mate[v] == to {
                    continue;
                }
                if to == root || (mate[to] != NIL && self.parent[mate[to]] != NIL) {
                    let cur = self.lca(mate, v, to);
                    self.in_blossom.iter_mut().for_each(|b| *b = false);
                    self.mark_path(mate, v, cur, to);
                    self.mark_path(mate, to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NIL {
                    self.parent[to] = v;
                    if mate[to] == NIL {
                        return Some(to);
                    }
                    self.used[mate[to]] = true;
                    queue.push_back(mate[to]);
                }
            }
        }
        None
    }
}

/// Instances whose parts have at most two vertices: the size-two parts are
/// exactly a matching of the required cardinality.
pub fn solve_small_parts(instance: &Instance) -> Result<Option<Partition>> {
    let bounds = instance.bounds();
    if bounds.large > 2 {
        return Err(Error::Precondition(format!("parts of size {} exceed two", bounds.large)));
    }
    let pairs_needed = if bounds.small == 2 { bounds.parts } else { bounds.num_large };
    let matching = max_matching(instance.graph());
    if matching.len() < pairs_needed {
        return Ok(None);
    }
    let n = instance.vertex_count();
    let mut assignment = vec![NIL; n];
    for (id, &(u, v)) in matching.iter().take(pairs_needed).enumerate() {
        assignment[u] = id;
        assignment[v] = id;
    }
    let mut next = pairs_needed;
    for slot in assignment.iter_mut().filter(|a| **a == NIL) {
        *slot = next;
        next += 1;
    }
    Ok(Some(Partition::new(assignment)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::verify_partition;

    #[test]
    fn bipartite_examples() {
        assert_eq!(bipartite_max_matching(&[0, 1], &[2, 3], &[(0, 2), (0, 3), (1, 2), (1, 3)]).len(), 2);
        assert_eq!(bipartite_max_matching(&[0], &[1, 2, 3], &[(0, 1), (0, 2), (0, 3)]).len(), 1);
        assert!(bipartite_max_matching(&[0], &[1], &[]).is_empty());
    }

    #[test]
    fn blossom_needs_contraction() {
        // Triangle 0-1-2 with pendant 3 on 2 and pendant 4 on 0: perfect-ish 2.
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (0, 4)]).unwrap();
        assert_eq!(max_matching(&g).len(), 2);
        assert_eq!(max_matching(&Graph::cycle(7)).len(), 3);
        assert_eq!(max_matching(&Graph::path(8)).len(), 4);
        assert_eq!(max_matching(&Graph::star(5)).len(), 1);
    }

    #[test]
    fn small_parts() {
        let path = Instance::new(Graph::path(4), 2).unwrap();
        let partition = solve_small_parts(&path).unwrap().unwrap();
        assert!(verify_partition(&path, &partition).unwrap().is_valid());
        let star = Instance::new(Graph::star(3), 2).unwrap();
        assert_eq!(solve_small_parts(&star).unwrap(), None);
        let singletons = Instance::new(Graph::path(6), 6).unwrap();
        assert!(solve_small_parts(&singletons).unwrap().is_some());
    }
}

//! Vertex integrity by iterative deepening.

use crate::graph::{Graph, Vertex};

/// Smallest `k <= budget` with a set `X`, `|X| <= k`, whose deletion leaves
/// components of at most `k` vertices. Returns `(X, k)`.
pub fn vertex_integrity(graph: &Graph, budget: usize) -> Option<(Vec<Vertex>, usize)> {
    let mut removed = vec![false; graph.vertex_count()];
    for k in 1..=budget.min(graph.vertex_count()) {
        if branch(graph, &mut removed, k, k) {
            let x = graph.vertices().filter(|&v| removed[v]).collect();
            return Some((x, k));
        }
    }
    None
}

fn branch(graph: &Graph, removed: &mut [bool], k: usize, left: usize) -> bool {
    let components = graph.components_where(|v| !removed[v]);
    let Some(big) = components.iter().find(|c| c.len() > k) else {
        return true;
    };
    if left == 0 {
        return false;
    }
    // Some vertex of any connected (k+1)-subset must go.
    for v in connected_prefix(graph, big, removed, k + 1) {
        removed[v] = true;
        if branch(graph, removed, k, left - 1) {
            return true;
        }
        removed[v] = false;
    }
    false
}

/// The first `size` vertices of a breadth-first search inside `component`.
fn connected_prefix(graph: &Graph, component: &[Vertex], removed: &[bool], size: usize) -> Vec<Vertex> {
    let mut seen = vec![false; graph.vertex_count()];
    let mut order = vec![component[0]];
    seen[component[0]] = true;
    let mut head = 0;
    while order.len() < size && head < order.len() {
        let u = order[head];
        head += 1;
        for &w in graph.neighbors(u) {
            if !removed[w] && !seen[w] && order.len() < size {
                seen[w] = true;
                order.push(w);
            }
        }
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_on_nine() {
        let (x, k) = vertex_integrity(&Graph::path(9), 9).unwrap();
        assert_eq!(k, 3);
        assert!(x.len() <= 3);
    }

    #[test]
    fn k5_leaves_an_edge() {
        // Deleting three vertices leaves K2, so k = 3; two deletions leave K3.
        assert_eq!(vertex_integrity(&Graph::complete(5), 5).unwrap().1, 3);
    }

    #[test]
    fn single_vertex() {
        assert_eq!(vertex_integrity(&Graph::empty(1), 1), Some((vec![], 1)));
    }

    #[test]
    fn budget_cutoff() {
        assert!(vertex_integrity(&Graph::path(9), 2).is_none());
    }
}

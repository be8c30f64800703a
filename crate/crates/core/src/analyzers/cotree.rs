//! Co-graph recognition by recursive component / co-component splitting.

use serde::Serialize;

use crate::graph::{Graph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoTree {
    Leaf(Vertex),
    Union(Box<CoTree>, Box<CoTree>),
    Join(Box<CoTree>, Box<CoTree>),
}

impl CoTree {
    pub fn leaves(&self) -> Vec<Vertex> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<Vertex>) {
        match self {
            CoTree::Leaf(v) => out.push(*v),
            CoTree::Union(a, b) | CoTree::Join(a, b) => {
                a.collect_leaves(out);
                b.collect_leaves(out);
            }
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            CoTree::Leaf(_) => 1,
            CoTree::Union(a, b) | CoTree::Join(a, b) => a.leaf_count() + b.leaf_count(),
        }
    }

    /// The graph this expression builds on vertices `0..n`.
    pub fn evaluate(&self, n: usize) -> Graph {
        let mut edges = Vec::new();
        self.collect_edges(&mut edges);
        Graph::from_edges_dedup(n, &edges).expect("co-tree leaves must lie in 0..n")
    }

    fn collect_edges(&self, edges: &mut Vec<(Vertex, Vertex)>) {
        match self {
            CoTree::Leaf(_) => {}
            CoTree::Union(a, b) => {
                a.collect_edges(edges);
                b.collect_edges(edges);
            }
            CoTree::Join(a, b) => {
                a.collect_edges(edges);
                b.collect_edges(edges);
                let right = b.leaves();
                for u in a.leaves() {
                    edges.extend(right.iter().map(|&v| (u, v)));
                }
            }
        }
    }
}

/// A binary co-tree when `graph` is a co-graph.
pub fn build_cotree(graph: &Graph) -> Option<CoTree> {
    if graph.vertex_count() == 0 {
        return None;
    }
    let all: Vec<Vertex> = graph.vertices().collect();
    build(graph, &all)
}

fn build(graph: &Graph, vertices: &[Vertex]) -> Option<CoTree> {
    if let [v] = vertices {
        return Some(CoTree::Leaf(*v));
    }
    let mut inside = vec![false; graph.vertex_count()];
    for &v in vertices {
        inside[v] = true;
    }
    let components = graph.components_where(|v| inside[v]);
    if components.len() > 1 {
        return fold(graph, &components, CoTree::Union);
    }
    let co_components = co_components(graph, vertices);
    if co_components.len() > 1 {
        return fold(graph, &co_components, CoTree::Join);
    }
    None
}

fn fold(graph: &Graph, groups: &[Vec<Vertex>], node: fn(Box<CoTree>, Box<CoTree>) -> CoTree) -> Option<CoTree> {
    let mut subtrees = groups.iter().map(|g| build(graph, g)).collect::<Option<Vec<_>>>()?;
    let mut acc = subtrees.pop().expect("at least two groups");
    while let Some(t) = subtrees.pop() {
        acc = node(Box::new(t), Box::new(acc));
    }
    Some(acc)
}

/// Components of the complement restricted to `vertices`, ordered by minimum vertex.
fn co_components(graph: &Graph, vertices: &[Vertex]) -> Vec<Vec<Vertex>> {
    let mut label = vec![usize::MAX; vertices.len()];
    let mut groups = Vec::new();
    for s in 0..vertices.len() {
        if label[s] != usize::MAX {
            continue;
        }
        let id = groups.len();
        label[s] = id;
        let mut stack = vec![s];
        let mut group = Vec::new();
        while let Some(i) = stack.pop() {
            group.push(vertices[i]);
            for j in 0..vertices.len() {
                if label[j] == usize::MAX && !graph.has_edge(vertices[i], vertices[j]) && i != j {
                    label[j] = id;
                    stack.push(j);
                }
            }
        }
        group.sort_unstable();
        groups.push(group);
    }
    groups
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p4_is_not_a_cograph() {
        assert_eq!(build_cotree(&Graph::path(4)), None);
    }

    #[test]
    fn c4_is_a_join_of_two_unions() {
        // C4 is K_{2,2}: sides {0,2} and {1,3}.
        let tree = build_cotree(&Graph::cycle(4)).unwrap();
        let leaf = |v| Box::new(CoTree::Leaf(v));
        let expected =
            CoTree::Join(Box::new(CoTree::Union(leaf(0), leaf(2))), Box::new(CoTree::Union(leaf(1), leaf(3))));
        assert_eq!(tree, expected);
    }

    #[test]
    fn single_vertex_is_a_leaf() {
        assert_eq!(build_cotree(&Graph::empty(1)), Some(CoTree::Leaf(0)));
    }

    #[test]
    fn evaluation_reproduces_graph() {
        let g = Graph::complete_bipartite(3, 2);
        let tree = build_cotree(&g).unwrap();
        assert_eq!(tree.evaluate(5), g);
    }
}

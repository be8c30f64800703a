//! Twin classes and the type graph.

use serde::Serialize;

use crate::graph::{Graph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassKind {
    Clique,
    Independent,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypePartition {
    pub classes: Vec<Vec<Vertex>>,
    /// Single-vertex classes are reported as cliques.
    pub kinds: Vec<ClassKind>,
    pub type_graph: Graph,
    pub class_of: Vec<usize>,
}

impl TypePartition {
    pub fn diversity(&self) -> usize {
        self.classes.len()
    }

    /// Whether this is a valid (not necessarily coarsest) twin partition of
    /// `graph` with consistent kinds and type graph.
    pub fn matches(&self, graph: &Graph) -> bool {
        let n = graph.vertex_count();
        if self.class_of.len() != n || self.kinds.len() != self.classes.len() {
            return false;
        }
        let mut seen = vec![false; n];
        for (c, class) in self.classes.iter().enumerate() {
            if class.is_empty() {
                return false;
            }
            for &v in class {
                if v >= n || seen[v] || self.class_of[v] != c || !same_type(graph, class[0], v) {
                    return false;
                }
                seen[v] = true;
            }
            let clique = class.len() == 1 || graph.has_edge(class[0], class[1]);
            if (self.kinds[c] == ClassKind::Clique) != clique {
                return false;
            }
        }
        if seen.contains(&false) || self.type_graph.vertex_count() != self.classes.len() {
            return false;
        }
        (0..self.classes.len()).all(|i| {
            (0..self.classes.len())
                .filter(|&j| j != i)
                .all(|j| self.type_graph.has_edge(i, j) == graph.has_edge(self.classes[i][0], self.classes[j][0]))
        })
    }
}

fn same_type(graph: &Graph, u: Vertex, v: Vertex) -> bool {
    let a = graph.neighbors(u).iter().filter(|&&w| w != v);
    let b = graph.neighbors(v).iter().filter(|&&w| w != u);
    a.eq(b)
}

/// The coarsest type partition, classes ordered by minimum vertex.
pub fn neighbourhood_diversity(graph: &Graph) -> TypePartition {
    let mut classes: Vec<Vec<Vertex>> = Vec::new();
    let mut class_of = vec![0; graph.vertex_count()];
    for v in graph.vertices() {
        match classes.iter().position(|class| same_type(graph, class[0], v)) {
            Some(c) => {
                classes[c].push(v);
                class_of[v] = c;
            }
            None => {
                class_of[v] = classes.len();
                classes.push(vec![v]);
            }
        }
    }
    let kinds = classes
        .iter()
        .map(|class| {
            if class.len() == 1 || graph.has_edge(class[0], class[1]) {
                ClassKind::Clique
            } else {
                ClassKind::Independent
            }
        })
        .collect();
    let mut edges = Vec::new();
    for (i, ci) in classes.iter().enumerate() {
        for (j, cj) in classes.iter().enumerate().skip(i + 1) {
            if graph.has_edge(ci[0], cj[0]) {
                edges.push((i, j));
            }
        }
    }
    let type_graph = Graph::from_edges(classes.len(), &edges).expect("type graph is simple");
    TypePartition { classes, kinds, type_graph, class_of }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clique_is_one_class() {
        let types = neighbourhood_diversity(&Graph::complete(6));
        assert_eq!(types.diversity(), 1);
        assert_eq!(types.kinds, vec![ClassKind::Clique]);
    }

    #[test]
    fn star_has_centre_and_leaves() {
        let types = neighbourhood_diversity(&Graph::star(3));
        assert_eq!(types.classes, vec![vec![0], vec![1, 2, 3]]);
        assert_eq!(types.kinds[1], ClassKind::Independent);
        assert_eq!(types.type_graph.edge_count(), 1);
    }

    #[test]
    fn path_on_four_is_rigid() {
        assert_eq!(neighbourhood_diversity(&Graph::path(4)).diversity(), 4);
    }
}

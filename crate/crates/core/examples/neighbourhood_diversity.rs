//! Twin classes and the type-pattern program on a blown-up path.

use ecp::analyzers::neighbourhood_diversity;
use ecp::ilp::{enumerate_connected_type_subgraphs, solve_neighbourhood_diversity};
use ecp::{Graph, Instance};

fn main() -> ecp::Result<()> {
    // Classes of sizes 3, 1, 4 in a row: a clique, a single vertex, an
    // independent set.
    let mut edges = vec![(0, 1), (0, 2), (1, 2)];
    edges.extend((0..3).map(|v| (v, 3)));
    edges.extend((4..8).map(|v| (3, v)));
    let graph = Graph::from_edges(8, &edges)?;
    let types = neighbourhood_diversity(&graph);
    println!("classes {:?}, kinds {:?}", types.classes, types.kinds);
    println!("patterns {:?}", enumerate_connected_type_subgraphs(&types));
    for p in 1..=8 {
        let answer = solve_neighbourhood_diversity(&Instance::new(graph.clone(), p)?, &types)?;
        println!("p={p}: {:?}", answer.map(|pi| pi.parts()));
    }
    Ok(())
}

//! Modular width of a few graphs and the solver built on the decomposition.

use ecp::ilp::{modular_width, solve_modular_width};
use ecp::{Graph, Instance};

fn main() -> ecp::Result<()> {
    // A P4 whose vertices are replaced by modules: K2, an independent pair,
    // K3 and a single vertex.
    let modules: [&[usize]; 4] = [&[0, 1], &[2, 3], &[4, 5, 6], &[7]];
    let mut edges = vec![(0, 1), (4, 5), (4, 6), (5, 6)];
    for w in modules.windows(2) {
        for &u in w[0] {
            edges.extend(w[1].iter().map(|&v| (u, v)));
        }
    }
    let graph = Graph::from_edges(8, &edges)?;
    for (name, g) in [("blown-up P4", &graph), ("P6", &Graph::path(6)), ("K_{3,3}", &Graph::complete_bipartite(3, 3))] {
        println!("{name}: modular width {}", modular_width(g));
    }
    for p in [2, 3, 4] {
        let answer = solve_modular_width(&Instance::new(graph.clone(), p)?)?;
        println!("p={p}: {:?}", answer.map(|pi| pi.parts()));
    }
    Ok(())
}

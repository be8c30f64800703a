//! Small modulators leaving tiny components: vertex integrity and 3-path
//! vertex cover.

use ecp::analyzers::{find_modulator, vertex_integrity, Family};
use ecp::ilp::{build_piece_configurations, solve_three_pvc, solve_vertex_integrity};
use ecp::{Error, Graph, Instance};

fn main() -> ecp::Result<()> {
    let graph = Graph::path(9);
    let (witness, k) = vertex_integrity(&graph, 9).expect("budget n always works");
    println!("vertex integrity {k}, witness {witness:?}");

    let bounds = Instance::new(graph.clone(), 3)?.bounds();
    let blocks = vec![vec![witness[1]], vec![witness[2]]];
    let piece = &graph.components_avoiding(&witness)[0];
    for c in build_piece_configurations(&graph, piece, &blocks, &bounds) {
        println!("piece {:?}: sizes {:?} inner {}+{}", c.piece, c.sizes, c.inner_small, c.inner_large);
    }

    for p in 1..=5 {
        let instance = Instance::new(graph.clone(), p)?;
        match solve_vertex_integrity(&instance, &witness, k) {
            Ok(answer) => println!("p={p}: {:?}", answer.map(|pi| pi.parts())),
            Err(err @ Error::Delegated(_)) => println!("p={p}: {err}"),
            Err(err) => return Err(err),
        }
    }

    let cover = find_modulator(&graph, Family::PathCover(3), 9).expect("exists").modulator;
    println!("3-path cover {cover:?}");
    for p in [3, 4, 9] {
        let answer = solve_three_pvc(&Instance::new(graph.clone(), p)?, &cover)?;
        println!("p={p}: {}", if answer.is_some() { "yes" } else { "no" });
    }
    Ok(())
}

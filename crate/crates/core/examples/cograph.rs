//! Recognise a cograph, print its co-tree, and solve it bottom up.

use ecp::analyzers::{build_cotree, CoTree};
use ecp::dp::solve_cograph;
use ecp::{Graph, Instance};

fn show(tree: &CoTree, depth: usize) {
    let pad = "  ".repeat(depth);
    match tree {
        CoTree::Leaf(v) => println!("{pad}{v}"),
        CoTree::Union(a, b) | CoTree::Join(a, b) => {
            println!("{pad}{}", if matches!(tree, CoTree::Union(..)) { "union" } else { "join" });
            show(a, depth + 1);
            show(b, depth + 1);
        }
    }
}

fn main() -> ecp::Result<()> {
    // K_{2,3} plus a universal vertex.
    let graph = Graph::from_edges(
        6,
        &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (5, 0), (5, 1), (5, 2), (5, 3), (5, 4)],
    )?;
    let tree = build_cotree(&graph).expect("no induced P4");
    show(&tree, 0);
    for p in 1..=6 {
        let answer = solve_cograph(&Instance::new(graph.clone(), p)?, &tree)?;
        println!("p={p}: {:?}", answer.map(|pi| pi.parts()));
    }
    println!("P4 is a cograph: {}", build_cotree(&Graph::path(4)).is_some());
    Ok(())
}

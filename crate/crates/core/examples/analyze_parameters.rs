//! Structural parameters of a few graphs, as `param` lines.

use ecp::analyzers::{find_modulator, parameter_report, Budgets, Family};
use ecp::Graph;

fn main() {
    for (name, graph) in [("petersen", petersen()), ("4x4 grid", Graph::grid(4, 4))] {
        println!("# {name}");
        print!("{}", parameter_report(&graph, &Budgets::default()).to_text());
        if let Some(m) = find_modulator(&graph, Family::PathCover(3), 8) {
            println!("3-path cover {:?}", m.modulator);
        }
    }
}

fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, (i + 2) % 5 + 5));
    }
    Graph::from_edges(10, &edges).expect("simple")
}

//! Dynamic programming over a nice tree decomposition, with table sizes.

use ecp::analyzers::compute_nice_tree_decomposition;
use ecp::dp::solve_treewidth_in;
use ecp::{Graph, Instance, Search, SearchLimits};

fn main() -> ecp::Result<()> {
    let graph = Graph::grid(3, 8);
    let td = compute_nice_tree_decomposition(&graph, 6).expect("grids of height 3 have width 3");
    println!("width {}, {} nice nodes", td.width(), td.nodes.len());
    for p in [2, 5, 8, 12] {
        let instance = Instance::new(graph.clone(), p)?;
        let mut search = Search::new(&SearchLimits::default());
        let answer = solve_treewidth_in(&instance, &td, &mut search)?;
        println!(
            "p={p:2}: {:3}  states {:6} peak table {:5}",
            if answer.is_some() { "yes" } else { "no" },
            search.counters.states,
            search.counters.peak_states
        );
    }
    Ok(())
}

//! Count every equitable connected partition of small grids.

use ecp::oracle::{enumerate_all, solve_exact};
use ecp::{Graph, Instance, SearchLimits};

fn main() -> ecp::Result<()> {
    let limits = SearchLimits::default();
    for (rows, cols) in [(2, 3), (3, 3), (3, 4)] {
        let graph = Graph::grid(rows, cols);
        let counts = (1..=graph.vertex_count())
            .map(|p| enumerate_all(&Instance::new(graph.clone(), p)?, &limits))
            .collect::<ecp::Result<Vec<u64>>>()?;
        println!("{rows}x{cols}: {counts:?}");
    }
    let first = solve_exact(&Instance::new(Graph::grid(3, 4), 3)?, &limits)?;
    println!("first 3x4 split into 3: {:?}", first.map(|pi| pi.parts()));
    Ok(())
}

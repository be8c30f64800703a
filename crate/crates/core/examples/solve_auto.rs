//! Pick a solver from the graph's parameters and print the run report.
//!
//!     cargo run --example solve_auto

use ecp::dispatch::{dispatch, Strategy};
use ecp::{Graph, Instance, SearchLimits};

fn main() -> ecp::Result<()> {
    let cases = [
        ("K10 into 3", Instance::new(Graph::complete(10), 3)?),
        ("3x4 grid into 4", Instance::new(Graph::grid(3, 4), 4)?),
        ("star with 3 leaves into 2", Instance::new(Graph::star(3), 2)?),
        ("C9 into 4", Instance::new(Graph::cycle(9), 4)?),
    ];
    for (name, instance) in cases {
        let report = dispatch(&instance, Strategy::Auto, &SearchLimits::default())?;
        println!("{name}: {} by {}", report.answer, report.algorithm_tag());
        if let Some(partition) = &report.certificate {
            println!("  parts {:?}", partition.parts());
        }
    }
    Ok(())
}

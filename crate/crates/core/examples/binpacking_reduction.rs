//! Reduce unary bin packing to a partition instance and compare answers.

use ecp::analyzers::{find_modulator, Family};
use ecp::gen::{binpacking_provenance, parse_binpacking, reduce_binpacking, solve_binpacking_bruteforce};
use ecp::graph::serialize_instance;
use ecp::oracle::solve_exact;
use ecp::SearchLimits;

fn main() -> ecp::Result<()> {
    for text in ["u ubp 2 3 3\n1 2 3\n", "u ubp 2 4 3\n3 3 2\n"] {
        let ubp = parse_binpacking(text)?;
        let instance = reduce_binpacking(&ubp);
        let packing = solve_binpacking_bruteforce(&ubp);
        let partition = solve_exact(&instance, &SearchLimits::default())?;
        println!(
            "{} -> packing {packing:?}, partition {:?}",
            ubp.items().iter().map(|a| a.to_string()).collect::<Vec<_>>().join(" "),
            partition.map(|pi| pi.parts())
        );
        let cover = find_modulator(instance.graph(), Family::PathCover(4), ubp.bins()).expect("the bins cover");
        println!("  4-path cover {:?}", cover.modulator);
        print!(
            "{}",
            serialize_instance(&instance, &binpacking_provenance(&ubp))
                .lines()
                .take(3)
                .map(|l| format!("  {l}\n"))
                .collect::<String>()
        );
    }
    Ok(())
}

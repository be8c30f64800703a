//! Check candidate partitions and list what is wrong with them.

use ecp::{verify_partition, Graph, Instance, Partition, Verdict};

fn main() -> ecp::Result<()> {
    let instance = Instance::new(Graph::path(6), 3)?;
    let candidates = [vec![0, 0, 1, 1, 2, 2], vec![0, 1, 0, 1, 2, 2], vec![0, 0, 0, 1, 1, 2]];
    for assignment in candidates {
        match verify_partition(&instance, &Partition::new(assignment.clone()))? {
            Verdict::Valid => println!("{assignment:?}: valid"),
            Verdict::Invalid(violations) => {
                println!("{assignment:?}: invalid");
                for v in violations {
                    println!("  {v}");
                }
            }
        }
    }
    Ok(())
}

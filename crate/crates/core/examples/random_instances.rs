//! One seeded instance of every random family.

use ecp::gen::{gen_random_instance, random_provenance, RandomFamily, RandomSize};
use ecp::graph::serialize_instance;

fn main() -> ecp::Result<()> {
    for family in RandomFamily::ALL {
        let size = RandomSize::new(12, 3);
        let instance = gen_random_instance(family, 42, &size)?;
        let text = serialize_instance(&instance, &random_provenance(family, 42, &size));
        println!("{}  ({} edges)", text.lines().next().unwrap_or_default(), instance.graph().edge_count());
    }
    Ok(())
}

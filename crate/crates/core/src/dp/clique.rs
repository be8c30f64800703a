use crate::error::{Error, Result};
use crate::graph::{chunk_sizes, Instance, Partition};

/// On a clique any split works: the first `num_large` parts take `large`
/// vertices, the rest `small`, in vertex order.
pub fn solve_clique(instance: &Instance) -> Result<Partition> {
    if !instance.graph().is_complete() {
        return Err(Error::Precondition("graph is not a clique".into()));
    }
    let bounds = instance.bounds();
    let mut assignment = Vec::with_capacity(instance.vertex_count());
    for (part, size) in chunk_sizes(&bounds).enumerate() {
        assignment.extend(std::iter::repeat_n(part, size));
    }
    Ok(Partition::new(assignment))
}

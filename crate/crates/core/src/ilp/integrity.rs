//! Solvers for graphs with a small modulator whose removal leaves tiny
//! components: vertex integrity and 3-path vertex cover.

use crate::analyzers::{is_in_family, Family};
use crate::dp::solve_small_parts;
use crate::error::{Error, Result};
use crate::graph::{Instance, Partition, Vertex};
use crate::search::{Search, SearchLimits};

use super::pieces::solve_with_modulator;

fn checked_modulator(instance: &Instance, modulator: &[Vertex]) -> Result<Vec<Vertex>> {
    let mut modulator = modulator.to_vec();
    modulator.sort_unstable();
    modulator.dedup();
    if modulator.iter().any(|&v| v >= instance.vertex_count()) {
        return Err(Error::Precondition("modulator vertex out of range".into()));
    }
    Ok(modulator)
}

/// `modulator` and `k` witness vertex integrity at most `k`: at most `k`
/// deleted vertices, components of at most `k` vertices. With more than `k`
/// parts the instance is delegated to other solvers.
pub fn solve_vertex_integrity(instance: &Instance, modulator: &[Vertex], k: usize) -> Result<Option<Partition>> {
    solve_vertex_integrity_in(instance, modulator, k, &mut Search::new(&SearchLimits::default()))
}

pub fn solve_vertex_integrity_in(
    instance: &Instance,
    modulator: &[Vertex],
    k: usize,
    search: &mut Search,
) -> Result<Option<Partition>> {
    let modulator = checked_modulator(instance, modulator)?;
    let largest = instance.graph().components_avoiding(&modulator).iter().map(Vec::len).max().unwrap_or(0);
    if modulator.len() > k || largest > k {
        return Err(Error::Precondition(format!("modulator does not witness vertex integrity {k}")));
    }
    if instance.parts() > k {
        return Err(Error::Delegated(format!("{} parts exceed the integrity bound {k}", instance.parts())));
    }
    solve_with_modulator(instance, &modulator, instance.parts(), search)
}

/// `modulator` must leave no path on three vertices.
pub fn solve_three_pvc(instance: &Instance, modulator: &[Vertex]) -> Result<Option<Partition>> {
    solve_three_pvc_in(instance, modulator, &mut Search::new(&SearchLimits::default()))
}

pub fn solve_three_pvc_in(instance: &Instance, modulator: &[Vertex], search: &mut Search) -> Result<Option<Partition>> {
    let modulator = checked_modulator(instance, modulator)?;
    if !is_in_family(instance.graph(), Family::PathCover(3), &modulator) {
        return Err(Error::Precondition("modulator leaves a path on three vertices".into()));
    }
    let bounds = instance.bounds();
    let k = modulator.len();
    // Some part misses the modulator and so lies in a piece of at most two vertices.
    if instance.parts() > k && bounds.small >= 3 {
        return Ok(None);
    }
    if bounds.large <= 2 {
        return solve_small_parts(instance);
    }
    solve_with_modulator(instance, &modulator, instance.parts().min(k), search)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{verify_partition, Graph};

    #[test]
    fn path_with_two_cut_vertices() {
        let instance = Instance::new(Graph::path(9), 3).unwrap();
        let partition = solve_vertex_integrity(&instance, &[2, 6], 3).unwrap().unwrap();
        assert!(verify_partition(&instance, &partition).unwrap().is_valid());
    }

    #[test]
    fn star_centre() {
        let instance = Instance::new(Graph::star(3), 2).unwrap();
        assert_eq!(
            solve_vertex_integrity(&instance, &[0], 1),
            Err(Error::Delegated("2 parts exceed the integrity bound 1".into()))
        );
        assert_eq!(solve_vertex_integrity(&instance, &[0], 2).unwrap(), None);
    }

    #[test]
    fn too_many_parts_are_delegated() {
        let instance = Instance::new(Graph::path(9), 4).unwrap();
        assert!(matches!(solve_vertex_integrity(&instance, &[2, 6], 3), Err(Error::Delegated(_))));
    }

    #[test]
    fn bad_witness() {
        let instance = Instance::new(Graph::path(9), 2).unwrap();
        assert!(matches!(solve_vertex_integrity(&instance, &[4], 3), Err(Error::Precondition(_))));
        assert!(matches!(solve_three_pvc(&instance, &[4]), Err(Error::Precondition(_))));
    }

    #[test]
    fn three_pvc_cases() {
        let p4 = Instance::new(Graph::path(4), 2).unwrap();
        assert!(solve_three_pvc(&p4, &[1]).unwrap().is_some());
        let fan = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (3, 4)]).unwrap();
        let instance = Instance::new(fan, 2).unwrap();
        assert!(solve_three_pvc(&instance, &[0]).unwrap().is_some());
        let singletons = Instance::new(Graph::cycle(6), 6).unwrap();
        assert!(solve_three_pvc(&singletons, &[0, 3]).unwrap().is_some());
    }
}

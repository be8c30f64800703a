mod common;

use proptest::prelude::*;

use ecp::oracle::solve_exact;
use ecp::{verify_partition, Instance, Partition, SearchLimits};

fn instance_with_assignment() -> impl Strategy<Value = (Instance, Vec<usize>, Vec<usize>)> {
    common::arb_instance(1, 9).prop_flat_map(|inst| {
        let n = inst.vertex_count();
        let p = inst.parts();
        let perm = Just((0..n).collect::<Vec<_>>()).prop_shuffle();
        (Just(inst), proptest::collection::vec(0..p, n), perm)
    })
}

fn expected_sizes(instance: &Instance) -> Vec<usize> {
    let b = instance.bounds();
    let mut sizes = vec![b.small; b.parts - b.num_large];
    sizes.extend(std::iter::repeat_n(b.large, b.num_large));
    sizes
}

proptest! {
    #[test]
    fn relabelling_preserves_the_verdict((instance, assignment, perm) in instance_with_assignment()) {
        let partition = Partition::new(assignment.clone());
        let mut moved = vec![0; assignment.len()];
        for (v, &part) in assignment.iter().enumerate() {
            moved[perm[v]] = part;
        }
        let relabelled = Instance::new(instance.graph().permuted(&perm), instance.parts()).unwrap();
        prop_assert_eq!(
            verify_partition(&instance, &partition).unwrap(),
            verify_partition(&relabelled, &Partition::new(moved)).unwrap()
        );
    }

    #[test]
    fn valid_partitions_have_the_equitable_sizes((instance, assignment, _) in instance_with_assignment()) {
        let mut candidates = vec![Partition::new(assignment)];
        if let Some(found) = solve_exact(&instance, &SearchLimits::unlimited()).unwrap() {
            candidates.push(found);
        }
        for partition in candidates {
            if verify_partition(&instance, &partition).unwrap().is_valid() {
                let mut sizes = partition.sizes();
                sizes.sort_unstable();
                prop_assert_eq!(sizes, expected_sizes(&instance));
            }
        }
    }

    #[test]
    fn single_part_is_always_valid(graph in common::arb_connected_graph(1, 12)) {
        let n = graph.vertex_count();
        let instance = Instance::new(graph, 1).unwrap();
        prop_assert!(verify_partition(&instance, &Partition::new(vec![0; n])).unwrap().is_valid());
    }
}

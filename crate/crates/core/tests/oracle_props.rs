mod common;

use proptest::prelude::*;

use ecp::oracle::{enumerate_all, solve_exact};
use ecp::{verify_partition, Graph, Instance, Partition, SearchLimits};

/// Valid partitions counted by walking every set partition of the vertices
/// as a restricted growth string.
fn brute_force_count(instance: &Instance) -> u64 {
    fn walk(instance: &Instance, labels: &mut Vec<usize>, used: usize, count: &mut u64) {
        let n = instance.vertex_count();
        if labels.len() == n {
            if used == instance.parts()
                && verify_partition(instance, &Partition::new(labels.clone())).unwrap().is_valid()
            {
                *count += 1;
            }
            return;
        }
        if used + (n - labels.len()) < instance.parts() {
            return;
        }
        for label in 0..=used.min(instance.parts() - 1) {
            labels.push(label);
            walk(instance, labels, used.max(label + 1), count);
            labels.pop();
        }
    }
    let mut count = 0;
    walk(instance, &mut Vec::new(), 0, &mut count);
    count
}

#[test]
fn oracle_agrees_with_its_count_on_all_small_graphs() {
    for graph in common::small_graphs(7) {
        for p in 1..=graph.vertex_count() {
            let instance = Instance::new(graph.clone(), p).unwrap();
            let found = solve_exact(&instance, &SearchLimits::unlimited()).unwrap();
            let count = enumerate_all(&instance, &SearchLimits::unlimited()).unwrap();
            assert_eq!(found.is_some(), count > 0, "{graph:?} p={p}");
            if let Some(partition) = found {
                assert!(verify_partition(&instance, &partition).unwrap().is_valid());
            }
        }
    }
}

#[test]
fn paths_and_cycles_always_split() {
    for n in 1..=9 {
        let mut graphs = vec![Graph::path(n)];
        if n >= 3 {
            graphs.push(Graph::cycle(n));
        }
        for graph in graphs {
            for p in 1..=n {
                let instance = Instance::new(graph.clone(), p).unwrap();
                assert!(solve_exact(&instance, &SearchLimits::unlimited()).unwrap().is_some(), "n={n} p={p}");
            }
        }
    }
}

#[test]
fn stars_split_only_into_one_or_nearly_all_parts() {
    for n in 2..=9 {
        for p in 1..=n {
            let instance = Instance::new(Graph::star(n - 1), p).unwrap();
            let yes = solve_exact(&instance, &SearchLimits::unlimited()).unwrap().is_some();
            assert_eq!(yes, p == 1 || p == n - 1 || p == n, "n={n} p={p}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn enumeration_counts_each_partition_once(instance in common::arb_instance(1, 8)) {
        prop_assert_eq!(enumerate_all(&instance, &SearchLimits::unlimited()).unwrap(), brute_force_count(&instance));
    }

    #[test]
    fn oracle_agrees_with_its_count(instance in common::arb_instance(8, 8)) {
        let found = solve_exact(&instance, &SearchLimits::unlimited()).unwrap();
        let count = enumerate_all(&instance, &SearchLimits::unlimited()).unwrap();
        prop_assert_eq!(found.is_some(), count > 0);
    }
}

mod common;

use proptest::prelude::*;

use ecp::analyzers::{
    build_cotree, compute_nice_tree_decomposition, find_modulator, is_in_family, neighbourhood_diversity, Family,
};
use ecp::gen::{gen_random_instance, RandomFamily, RandomSize};
use ecp::Graph;

const FAMILIES: [Family; 6] = [
    Family::VertexCover,
    Family::PathCover(3),
    Family::PathCover(4),
    Family::ToClique,
    Family::ToCluster,
    Family::ToDisjointPaths,
];

/// Size of the smallest vertex set whose deletion lands in `family`, by
/// trying every subset.
fn smallest_modulator(graph: &Graph, family: Family) -> usize {
    let n = graph.vertex_count();
    (0u32..1 << n)
        .filter(|mask| {
            let set: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
            is_in_family(graph, family, &set)
        })
        .map(u32::count_ones)
        .min()
        .unwrap() as usize
}

fn twins(graph: &Graph, u: usize, v: usize) -> bool {
    let outside =
        |a: usize, b: usize| -> Vec<usize> { graph.neighbors(a).iter().copied().filter(|&w| w != b).collect() };
    outside(u, v) == outside(v, u)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn modulators_are_minimum_and_valid(graph in common::arb_connected_graph(1, 10)) {
        for family in FAMILIES {
            let report = find_modulator(&graph, family, graph.vertex_count()).unwrap();
            prop_assert!(is_in_family(&graph, family, &report.modulator));
            prop_assert_eq!(report.size, report.modulator.len());
            prop_assert_eq!(report.size, smallest_modulator(&graph, family), "{}", family);
            if report.size > 0 {
                prop_assert!(find_modulator(&graph, family, report.size - 1).is_none());
            }
        }
    }

    #[test]
    fn cotrees_rebuild_the_graph(seed in any::<u64>(), n in 1usize..16, graph in common::arb_connected_graph(1, 9)) {
        let cograph = gen_random_instance(RandomFamily::Cograph, seed, &RandomSize::new(n, 1)).unwrap();
        let tree = build_cotree(cograph.graph()).expect("generated cographs are cographs");
        prop_assert_eq!(&tree.evaluate(n), cograph.graph());
        if let Some(tree) = build_cotree(&graph) {
            prop_assert_eq!(tree.evaluate(graph.vertex_count()), graph);
        }
    }

    #[test]
    fn nice_decompositions_are_valid(graph in common::arb_connected_graph(1, 26)) {
        let td = compute_nice_tree_decomposition(&graph, graph.vertex_count()).unwrap();
        prop_assert!(td.validate(&graph).is_ok(), "{:?}", td.validate(&graph));
    }

    #[test]
    fn type_classes_are_the_twin_classes(graph in common::arb_connected_graph(1, 10)) {
        let types = neighbourhood_diversity(&graph);
        prop_assert!(types.matches(&graph));
        for u in graph.vertices() {
            for v in graph.vertices() {
                prop_assert_eq!(types.class_of[u] == types.class_of[v], twins(&graph, u, v), "{} {}", u, v);
            }
        }
    }
}

mod common;

use proptest::prelude::*;

use ecp::analyzers::{
    compute_nice_tree_decomposition, find_modulator, neighbourhood_diversity, vertex_integrity, Family,
};
use ecp::dp::solve_treewidth;
use ecp::ilp::{
    build_piece_configurations, solve_integer_program, solve_neighbourhood_diversity, solve_vertex_integrity,
    IntegerProgram, ProgramOutcome, Relation, Sense,
};
use ecp::{verify_partition, SearchLimits, Vertex};

const VOLUME_CAP: i64 = 1_000_000;

/// Every partition of `items` into at most `max_blocks` blocks.
fn block_partitions(items: &[Vertex], max_blocks: usize) -> Vec<Vec<Vec<Vertex>>> {
    let Some((&first, rest)) = items.split_first() else {
        return vec![Vec::new()];
    };
    let mut out = Vec::new();
    for blocks in block_partitions(rest, max_blocks) {
        for i in 0..blocks.len() {
            let mut grown = blocks.clone();
            grown[i].insert(0, first);
            out.push(grown);
        }
        if blocks.len() < max_blocks {
            let mut grown = blocks;
            grown.insert(0, vec![first]);
            out.push(grown);
        }
    }
    out
}

#[derive(Clone, Debug)]
struct Spec {
    boxes: Vec<(i64, i64)>,
    rows: Vec<(Vec<i64>, u8, i64)>,
    objective: Option<(bool, Vec<i64>)>,
}

fn arb_program() -> impl Strategy<Value = Spec> {
    (1usize..=12)
        .prop_flat_map(|vars| {
            let boxes = proptest::collection::vec((-4i64..=4, 0i64..=6), vars);
            let row = (proptest::collection::vec(-3i64..=3, vars), 0u8..3, -10i64..=10);
            let rows = proptest::collection::vec(row, 0..=8);
            let objective = proptest::option::of((any::<bool>(), proptest::collection::vec(-3i64..=3, vars)));
            (boxes, rows, objective)
        })
        .prop_map(|(boxes, rows, objective)| {
            // Shrink the widest boxes until the volume is small enough to enumerate.
            let mut boxes: Vec<(i64, i64)> = boxes.into_iter().map(|(lo, w)| (lo, lo + w)).collect();
            while boxes.iter().map(|(lo, hi)| hi - lo + 1).product::<i64>() > VOLUME_CAP {
                let widest = (0..boxes.len()).max_by_key(|&i| boxes[i].1 - boxes[i].0).unwrap();
                boxes[widest].1 -= 1;
            }
            Spec { boxes, rows, objective }
        })
}

fn build(spec: &Spec) -> IntegerProgram {
    let mut ip = IntegerProgram::new();
    for (i, &(lo, hi)) in spec.boxes.iter().enumerate() {
        ip.add_variable(format!("x{i}"), lo, hi);
    }
    let terms =
        |coefs: &[i64]| -> Vec<(usize, i64)> { coefs.iter().copied().enumerate().filter(|&(_, c)| c != 0).collect() };
    for (i, (coefs, rel, rhs)) in spec.rows.iter().enumerate() {
        let relation = [Relation::Le, Relation::Eq, Relation::Ge][*rel as usize];
        ip.add_constraint(format!("r{i}"), terms(coefs), relation, *rhs);
    }
    if let Some((maximize, coefs)) = &spec.objective {
        ip.set_objective(if *maximize { Sense::Maximize } else { Sense::Minimize }, terms(coefs));
    }
    ip
}

/// Feasibility and best objective (maximisation form) by visiting every point.
fn enumerate(spec: &Spec) -> Option<i64> {
    let sign = match &spec.objective {
        Some((true, _)) => 1,
        _ => -1,
    };
    let mut point: Vec<i64> = spec.boxes.iter().map(|b| b.0).collect();
    let mut best: Option<i64> = None;
    loop {
        let ok = spec.rows.iter().all(|(coefs, rel, rhs)| {
            let lhs: i64 = coefs.iter().zip(&point).map(|(c, x)| c * x).sum();
            match rel {
                0 => lhs <= *rhs,
                1 => lhs == *rhs,
                _ => lhs >= *rhs,
            }
        });
        if ok {
            let value = spec
                .objective
                .as_ref()
                .map_or(0, |(_, c)| sign * c.iter().zip(&point).map(|(c, x)| c * x).sum::<i64>());
            best = Some(best.map_or(value, |b| b.max(value)));
        }
        let mut i = 0;
        loop {
            if i == point.len() {
                return best;
            }
            if point[i] < spec.boxes[i].1 {
                point[i] += 1;
                break;
            }
            point[i] = spec.boxes[i].0;
            i += 1;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn program_solver_matches_enumeration(spec in arb_program()) {
        let ip = build(&spec);
        let outcome = solve_integer_program(&ip, &SearchLimits::unlimited()).unwrap();
        match (enumerate(&spec), outcome) {
            (None, ProgramOutcome::Infeasible) => {}
            (Some(best), ProgramOutcome::Solved { values, objective }) => {
                prop_assert!(ip.is_feasible(&values));
                if let Some((maximize, _)) = &spec.objective {
                    let sign = if *maximize { 1 } else { -1 };
                    prop_assert_eq!(objective.map(|o| sign * o), Some(best));
                    prop_assert_eq!(objective, Some(ip.evaluate(&ip.objective.as_ref().unwrap().terms, &values)));
                }
            }
            (expected, got) => prop_assert!(false, "enumeration {:?}, solver {:?}", expected, got),
        }
    }

    #[test]
    fn diversity_answer_ignores_order_within_classes(instance in common::arb_instance(1, 9), seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let types = neighbourhood_diversity(instance.graph());
        let mut shuffled = types.clone();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for class in &mut shuffled.classes {
            class.shuffle(&mut rng);
        }
        let plain = solve_neighbourhood_diversity(&instance, &types).unwrap();
        let moved = solve_neighbourhood_diversity(&instance, &shuffled).unwrap();
        prop_assert_eq!(plain.is_some(), moved.is_some());
        if let Some(partition) = moved {
            prop_assert!(verify_partition(&instance, &partition).unwrap().is_valid());
        }
    }

    #[test]
    fn configurations_account_for_every_piece_vertex(instance in common::arb_instance(2, 9), pick in any::<u64>()) {
        let graph = instance.graph();
        let bounds = instance.bounds();
        let cover = find_modulator(graph, Family::PathCover(3), graph.vertex_count()).unwrap().modulator;
        let guesses = block_partitions(&cover, instance.parts());
        let blocks = &guesses[(pick % guesses.len() as u64) as usize];
        for piece in graph.components_avoiding(&cover) {
            for config in build_piece_configurations(graph, &piece, blocks, &bounds) {
                let inner = config.inner_small * bounds.small + config.inner_large * bounds.large;
                prop_assert_eq!(config.sizes.iter().sum::<usize>() + inner, piece.len(), "{:?}", config);
                prop_assert_eq!(config.assignment.len(), piece.len());
                for (block, &size) in config.sizes.iter().enumerate() {
                    prop_assert_eq!(config.assignment.iter().filter(|&&a| a == block).count(), size);
                }
            }
        }
    }

    #[test]
    fn integrity_and_treewidth_agree(instance in common::arb_instance(8, 8)) {
        let graph = instance.graph();
        let n = graph.vertex_count();
        let (witness, _) = vertex_integrity(graph, n).unwrap();
        let td = compute_nice_tree_decomposition(graph, n).unwrap();
        let by_integrity = solve_vertex_integrity(&instance, &witness, n).unwrap();
        let by_width = solve_treewidth(&instance, &td).unwrap();
        prop_assert_eq!(by_integrity.is_some(), by_width.is_some());
        for partition in by_integrity.iter().chain(&by_width) {
            prop_assert!(verify_partition(&instance, partition).unwrap().is_valid());
        }
    }
}

#[test]
fn program_objective_uses_the_requested_sense() {
    let spec = Spec { boxes: vec![(0, 3), (0, 3)], rows: vec![], objective: Some((false, vec![1, -1])) };
    let outcome = solve_integer_program(&build(&spec), &SearchLimits::unlimited()).unwrap();
    assert_eq!(outcome, ProgramOutcome::Solved { values: vec![0, 3], objective: Some(-3) });
}

use proptest::prelude::*;

use ecp::analyzers::{find_modulator, is_in_family, Family};
use ecp::gen::{
    binpacking_provenance, gen_random_instance, parse_binpacking, random_binpacking, random_provenance,
    reduce_binpacking, solve_binpacking_bruteforce, BinPackingInstance, RandomFamily, RandomSize,
};
use ecp::graph::{parse_instance, serialize_instance};
use ecp::oracle::solve_exact;
use ecp::SearchLimits;

fn arb_binpacking(max_total: usize) -> impl Strategy<Value = BinPackingInstance> {
    (1usize..=3, any::<u64>())
        .prop_flat_map(move |(bins, seed)| (Just(bins), Just(seed), 1..=max_total / bins))
        .prop_map(|(bins, seed, capacity)| random_binpacking(seed, bins, capacity).unwrap())
}

/// Items that add up to `bins * capacity`, packable or not.
fn arb_loose_binpacking() -> impl Strategy<Value = BinPackingInstance> {
    (2usize..=3, 1usize..=5)
        .prop_flat_map(|(bins, capacity)| {
            let total = bins * capacity;
            (Just(bins), Just(capacity), proptest::collection::vec(1..=capacity, 1..=total))
        })
        .prop_filter_map("items must add up", |(bins, capacity, raw)| {
            let total = bins * capacity;
            let mut items = Vec::new();
            let mut sum = 0;
            for a in raw {
                let a = a.min(total - sum);
                if a == 0 {
                    break;
                }
                items.push(a);
                sum += a;
            }
            BinPackingInstance::new(items, bins, capacity).ok()
        })
}

fn arb_family() -> impl Strategy<Value = RandomFamily> {
    proptest::sample::select(RandomFamily::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn reduction_is_faithful(ubp in prop_oneof![arb_binpacking(16), arb_loose_binpacking()]) {
        let instance = reduce_binpacking(&ubp);
        let packed = solve_binpacking_bruteforce(&ubp);
        if let Some(bin_of) = &packed {
            let mut load = vec![0; ubp.bins()];
            for (&a, &bin) in ubp.items().iter().zip(bin_of) {
                load[bin] += a;
            }
            prop_assert!(load.iter().all(|&l| l == ubp.capacity()));
        }
        let partitioned = solve_exact(&instance, &SearchLimits::unlimited()).unwrap();
        prop_assert_eq!(partitioned.is_some(), packed.is_some(), "{}", ubp);
    }

    #[test]
    fn bins_cover_every_four_vertex_path(ubp in arb_binpacking(20)) {
        let instance = reduce_binpacking(&ubp);
        let bins: Vec<usize> = (0..ubp.bins()).collect();
        prop_assert!(is_in_family(instance.graph(), Family::PathCover(4), &bins));
        let cover = find_modulator(instance.graph(), Family::PathCover(4), ubp.bins());
        prop_assert!(cover.is_some_and(|c| c.size <= ubp.bins()));
    }

    #[test]
    fn generated_instances_round_trip(family in arb_family(), seed in any::<u64>(), n in 3usize..40, p_seed in any::<usize>()) {
        let size = RandomSize::new(n, 1 + p_seed % n);
        let instance = gen_random_instance(family, seed, &size).unwrap();
        prop_assert!(instance.graph().is_connected());
        let text = serialize_instance(&instance, &random_provenance(family, seed, &size));
        prop_assert_eq!(parse_instance(&text).unwrap(), instance);
    }

    #[test]
    fn reduced_instances_round_trip(ubp in arb_binpacking(20)) {
        prop_assert_eq!(&parse_binpacking(&ubp.to_string()).unwrap(), &ubp);
        let instance = reduce_binpacking(&ubp);
        let text = serialize_instance(&instance, &binpacking_provenance(&ubp));
        prop_assert_eq!(parse_instance(&text).unwrap(), instance);
    }
}

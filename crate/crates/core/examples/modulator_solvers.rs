//! Graphs a few vertices away from a clique or a cluster graph.

use ecp::analyzers::{find_modulator, Family};
use ecp::dp::{solve_clique_modulator, solve_cluster_modulator};
use ecp::gen::{gen_random_instance, RandomFamily, RandomSize};

fn main() -> ecp::Result<()> {
    let size = RandomSize { modulator: Some(2), ..RandomSize::new(16, 4) };

    let cluster = gen_random_instance(RandomFamily::ClusterPlusModulator, 11, &size)?;
    let m = find_modulator(cluster.graph(), Family::ToCluster, 4).expect("generated with 2").modulator;
    println!("cluster modulator {m:?}");
    println!("  {:?}", solve_cluster_modulator(&cluster, &m)?.map(|pi| pi.parts()));

    let clique = gen_random_instance(RandomFamily::CliquePlusModulator, 11, &size)?;
    let m = find_modulator(clique.graph(), Family::ToClique, 4).expect("generated with 2").modulator;
    println!("clique modulator {m:?}");
    println!("  {:?}", solve_clique_modulator(&clique, &m)?.map(|pi| pi.parts()));
    Ok(())
}

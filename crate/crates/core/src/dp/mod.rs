//! Dynamic-programming and matching solvers.

mod bipartite;
mod clique;
mod cluster;
mod cograph;
mod dclique;
mod matching;
mod treewidth;

pub use bipartite::{build_bipartite_table, BipartiteTable};
pub use clique::solve_clique;
pub(crate) use cluster::for_each_set_partition;
pub use cluster::{solve_cluster_modulator, solve_cluster_modulator_in};
pub use cograph::{solve_cograph, solve_cograph_in};
pub use dclique::{solve_clique_modulator, solve_clique_modulator_in};
pub use matching::{bipartite_max_matching, max_matching, solve_small_parts};
pub use treewidth::{solve_treewidth, solve_treewidth_in};

//! Structural parameters and decompositions consumed by the solvers.

mod cotree;
mod integrity;
mod modulator;
mod report;
mod treedec;
mod types;

pub use cotree::{build_cotree, CoTree};
pub use integrity::vertex_integrity;
pub use modulator::{find_modulator, is_in_family, Family, ModulatorReport};
pub use report::{parameter_report, Budgets, ParameterReport};
pub use treedec::{compute_nice_tree_decomposition, NiceNode, NiceTreeDecomposition, NodeKind};
pub use types::{neighbourhood_diversity, ClassKind, TypePartition};

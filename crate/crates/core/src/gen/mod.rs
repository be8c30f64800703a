//! Instance generators.

mod binpacking;
mod random;

pub use binpacking::{
    binpacking_provenance, parse_binpacking, random_binpacking, reduce_binpacking, solve_binpacking_bruteforce,
    BinPackingInstance,
};
pub use random::{gen_random_instance, random_provenance, RandomFamily, RandomSize};

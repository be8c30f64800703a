//! Exact and parameterized solvers for the equitable connected partition
//! problem: split a connected graph into `p` connected parts whose sizes
//! differ by at most one.

pub mod analyzers;
pub mod dispatch;
pub mod dp;
pub mod error;
pub mod gen;
pub mod graph;
pub mod ilp;
pub mod oracle;
pub mod search;

pub use error::{Error, Result};
pub use graph::{verify_partition, Graph, Instance, Partition, SizeBounds, Solution, Verdict, Vertex};
pub use search::{Counters, Search, SearchLimits};

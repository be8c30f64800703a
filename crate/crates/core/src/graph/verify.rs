use std::fmt;

use serde::Serialize;

use super::{Instance, Partition};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    EmptyPart {
        part: usize,
    },
    Disconnected {
        part: usize,
    },
    BadSize {
        part: usize,
        size: usize,
    },
    /// Sizes are all admissible but the number of large parts is off.
    LargeCount {
        expected: usize,
        found: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyPart { part } => write!(f, "part {} is empty", part + 1),
            Violation::Disconnected { part } => write!(f, "part {} is disconnected", part + 1),
            Violation::BadSize { part, size } => write!(f, "part {} has inadmissible size {size}", part + 1),
            Violation::LargeCount { expected, found } => {
                write!(f, "expected {expected} large parts, found {found}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "violations", rename_all = "snake_case")]
pub enum Verdict {
    Valid,
    Invalid(Vec<Violation>),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

/// Checks part count, connectivity and sizes. Violations are listed by part.
pub fn verify_partition(instance: &Instance, partition: &Partition) -> Result<Verdict> {
    let n = instance.vertex_count();
    let p = instance.parts();
    if partition.assignment().len() != n {
        return Err(Error::InvalidArgument(format!(
            "assignment covers {} vertices, graph has {n}",
            partition.assignment().len()
        )));
    }
    if let Some(&bad) = partition.assignment().iter().find(|&&a| a >= p) {
        return Err(Error::InvalidArgument(format!("part id {} exceeds p = {p}", bad + 1)));
    }
    let bounds = instance.bounds();
    let mut members = vec![Vec::new(); p];
    for (v, &part) in partition.assignment().iter().enumerate() {
        members[part].push(v);
    }
    let mut violations = Vec::new();
    let mut large = 0;
    let mut sizes_ok = true;
    for (part, vs) in members.iter().enumerate() {
        if vs.is_empty() {
            violations.push(Violation::EmptyPart { part });
            sizes_ok = false;
            continue;
        }
        if !instance.graph().connected_set(vs) {
            violations.push(Violation::Disconnected { part });
        }
        match bounds.classify(vs.len()) {
            Some(true) => large += 1,
            Some(false) => {}
            None => {
                violations.push(Violation::BadSize { part, size: vs.len() });
                sizes_ok = false;
            }
        }
    }
    if sizes_ok && large != bounds.num_large {
        violations.push(Violation::LargeCount { expected: bounds.num_large, found: large });
    }
    Ok(if violations.is_empty() { Verdict::Valid } else { Verdict::Invalid(violations) })
}

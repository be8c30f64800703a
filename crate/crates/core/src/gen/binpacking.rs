//! Unary bin packing: brute force, text format and the reduction to ECP.
//!
//! Each item `a` becomes a star on `a` vertices whose centre (the hub) is
//! joined to every bin vertex. With `p = k`, every part has `b + 1` vertices;
//! it holds exactly one bin vertex and whole stars summing to `b`.

use std::fmt::{self, Write as _};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::io::{number, significant_lines};
use crate::graph::{Graph, Instance};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinPackingInstance {
    items: Vec<usize>,
    bins: usize,
    capacity: usize,
}

impl BinPackingInstance {
    pub fn new(items: Vec<usize>, bins: usize, capacity: usize) -> Result<Self> {
        if bins == 0 || capacity == 0 {
            return Err(Error::InvalidInstance("bin count and capacity must be positive".into()));
        }
        if items.contains(&0) {
            return Err(Error::InvalidInstance("items must be positive".into()));
        }
        // An item larger than a bin makes the instance trivially infeasible,
        // and the reduction relies on every star fitting into one part.
        if let Some(&a) = items.iter().find(|&&a| a > capacity) {
            return Err(Error::InvalidInstance(format!("item {a} exceeds the capacity {capacity}")));
        }
        let total: usize = items.iter().sum();
        if total != bins * capacity {
            return Err(Error::InvalidInstance(format!("items sum to {total}, expected {bins} x {capacity}")));
        }
        Ok(BinPackingInstance { items, bins, capacity })
    }

    pub fn items(&self) -> &[usize] {
        &self.items
    }

    pub fn bins(&self) -> usize {
        self.bins
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }
}

impl fmt::Display for BinPackingInstance {
    /// `u ubp <k> <b> <|A|>` followed by the items on one line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "u ubp {} {} {}", self.bins, self.capacity, self.items.len())?;
        let items: Vec<String> = self.items.iter().map(usize::to_string).collect();
        writeln!(f, "{}", items.join(" "))
    }
}

pub fn parse_binpacking(text: &str) -> Result<BinPackingInstance> {
    let mut lines = significant_lines(text);
    let (line, header) = lines.next().ok_or_else(|| Error::parse(1, "missing `u ubp` header"))?;
    if header.len() != 5 || header[0] != "u" || header[1] != "ubp" {
        return Err(Error::parse(line, "malformed header, expected `u ubp <k> <b> <count>`"));
    }
    let bins = number(line, header[2], "bin count")?;
    let capacity = number(line, header[3], "capacity")?;
    let count = number(line, header[4], "item count")?;
    let mut items = Vec::with_capacity(count);
    let mut last = line;
    for (line, tokens) in lines {
        last = line;
        for token in tokens {
            items.push(number(line, token, "item")?);
        }
    }
    if items.len() != count {
        return Err(Error::parse(last, format!("header announces {count} items, found {}", items.len())));
    }
    BinPackingInstance::new(items, bins, capacity).map_err(|e| Error::parse(last, e.to_string()))
}

/// Bins `0..k` first, then each item's star, centre before leaves.
pub fn reduce_binpacking(ubp: &BinPackingInstance) -> Instance {
    let k = ubp.bins;
    let n = k + ubp.items.iter().sum::<usize>();
    let mut edges = Vec::new();
    let mut next = k;
    for &a in &ubp.items {
        let hub = next;
        edges.extend((0..k).map(|bin| (bin, hub)));
        edges.extend((hub + 1..hub + a).map(|leaf| (hub, leaf)));
        next += a;
    }
    let graph = Graph::from_edges(n, &edges).expect("reduction graph is simple");
    Instance::new(graph, k).expect("reduction graph is connected and k <= n")
}

/// Bin per item with every bin filled exactly, or `None`.
pub fn solve_binpacking_bruteforce(ubp: &BinPackingInstance) -> Option<Vec<usize>> {
    let mut order: Vec<usize> = (0..ubp.items.len()).collect();
    order.sort_by(|&a, &b| ubp.items[b].cmp(&ubp.items[a]).then(a.cmp(&b)));
    let mut load = vec![0; ubp.bins];
    let mut bin_of = vec![0; ubp.items.len()];
    fn place(ubp: &BinPackingInstance, order: &[usize], i: usize, load: &mut [usize], bin_of: &mut [usize]) -> bool {
        let Some(&item) = order.get(i) else {
            return load.iter().all(|&l| l == ubp.capacity);
        };
        let a = ubp.items[item];
        for bin in 0..load.len() {
            // Bins with equal load are interchangeable; try the first only.
            if load[bin] + a > ubp.capacity || load[..bin].contains(&load[bin]) {
                continue;
            }
            load[bin] += a;
            bin_of[item] = bin;
            if place(ubp, order, i + 1, load, bin_of) {
                return true;
            }
            load[bin] -= a;
        }
        false
    }
    place(ubp, &order, 0, &mut load, &mut bin_of).then_some(bin_of)
}

/// Random items summing to `bins * capacity`, each at most `capacity`.
pub fn random_binpacking(seed: u64, bins: usize, capacity: usize) -> Result<BinPackingInstance> {
    if bins == 0 || capacity == 0 {
        return Err(Error::InvalidArgument("bin count and capacity must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rest = bins * capacity;
    let mut items = Vec::new();
    while rest > 0 {
        let a = rng.gen_range(1..=rest.min(capacity));
        items.push(a);
        rest -= a;
    }
    BinPackingInstance::new(items, bins, capacity)
}

/// Comment lines recording where a reduced instance came from.
pub fn binpacking_provenance(ubp: &BinPackingInstance) -> Vec<String> {
    let mut items = String::new();
    for (i, a) in ubp.items.iter().enumerate() {
        let _ = write!(items, "{}{a}", if i == 0 { "" } else { "," });
    }
    vec![format!("generator=ubp k={} b={} items={items}", ubp.bins, ubp.capacity)]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_layout() {
        let ubp = BinPackingInstance::new(vec![1, 2, 3], 2, 3).unwrap();
        let instance = reduce_binpacking(&ubp);
        assert_eq!(instance.vertex_count(), 8);
        assert_eq!(instance.parts(), 2);
        // Hubs 2, 3, 5; leaves 4, 6, 7.
        let g = instance.graph();
        assert!(g.has_edge(0, 2) && g.has_edge(1, 5) && g.has_edge(3, 4) && g.has_edge(5, 7));
        assert_eq!(g.edge_count(), 6 + 3);
    }

    #[test]
    fn brute_force() {
        let yes = BinPackingInstance::new(vec![1, 2, 3], 2, 3).unwrap();
        let bins = solve_binpacking_bruteforce(&yes).unwrap();
        assert_eq!(bins[0], bins[1]);
        assert_ne!(bins[0], bins[2]);
        let no = BinPackingInstance::new(vec![2, 2, 2], 2, 3).unwrap();
        assert!(solve_binpacking_bruteforce(&no).is_none());
        let ones = BinPackingInstance::new(vec![1, 1], 2, 1).unwrap();
        assert_eq!(solve_binpacking_bruteforce(&ones), Some(vec![0, 1]));
    }

    #[test]
    fn single_bin() {
        let ubp = BinPackingInstance::new(vec![4], 1, 4).unwrap();
        assert_eq!(reduce_binpacking(&ubp).vertex_count(), 5);
        assert_eq!(solve_binpacking_bruteforce(&ubp), Some(vec![0]));
    }

    #[test]
    fn text_round_trip() {
        let ubp = BinPackingInstance::new(vec![3, 1, 2], 2, 3).unwrap();
        assert_eq!(parse_binpacking(&ubp.to_string()).unwrap(), ubp);
        assert!(parse_binpacking("u ubp 2 3 3\n1 2\n").is_err());
        assert!(parse_binpacking("u ubp 2 3 2\n1 2\n").is_err());
    }

    #[test]
    fn invalid_instances() {
        assert!(BinPackingInstance::new(vec![1, 2], 2, 2).is_err());
        assert!(BinPackingInstance::new(vec![0, 4], 2, 2).is_err());
        assert!(BinPackingInstance::new(vec![3, 1], 2, 2).is_err());
    }

    #[test]
    fn random_instances_are_valid_and_reproducible() {
        let a = random_binpacking(9, 3, 5).unwrap();
        assert_eq!(a, random_binpacking(9, 3, 5).unwrap());
        assert_eq!(a.items().iter().sum::<usize>(), 15);
    }
}

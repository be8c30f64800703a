//! Which complete bipartite graphs split into admissible connected parts.

use crate::error::{Error, Result};
use crate::graph::SizeBounds;

/// `K(k, l, g)`: can `K_{k,l}` be split into connected parts of admissible
/// size using exactly `g` large parts. With `small >= 2` every part needs a
/// vertex on each side, and any such vertex set is connected.
#[derive(Clone, Debug)]
pub struct BipartiteTable {
    bounds: SizeBounds,
    side: usize,
    cap: usize,
    cells: Vec<bool>,
}

pub fn build_bipartite_table(n: usize, bounds: SizeBounds) -> Result<BipartiteTable> {
    if bounds.small < 2 {
        return Err(Error::Precondition("bipartite table needs parts of at least two vertices".into()));
    }
    let side = n + 1;
    let cap = bounds.num_large;
    let mut table = BipartiteTable { bounds, side, cap, cells: vec![false; side * side * (cap + 1)] };
    table.set(0, 0, 0);
    for k in 0..=n {
        for l in 0..=n - k {
            for g in 0..=cap {
                if (k, l) != (0, 0) && table.last_part(k, l, g).is_some() {
                    table.set(k, l, g);
                }
            }
        }
    }
    Ok(table)
}

impl BipartiteTable {
    fn index(&self, k: usize, l: usize, g: usize) -> usize {
        (k * self.side + l) * (self.cap + 1) + g
    }

    fn set(&mut self, k: usize, l: usize, g: usize) {
        let i = self.index(k, l, g);
        self.cells[i] = true;
    }

    pub fn get(&self, k: usize, l: usize, g: usize) -> bool {
        k < self.side && l < self.side && g <= self.cap && self.cells[self.index(k, l, g)]
    }

    pub fn max_side(&self) -> usize {
        self.side - 1
    }

    pub fn large_cap(&self) -> usize {
        self.cap
    }

    /// Some part `(a, b)` whose removal leaves a feasible entry.
    fn last_part(&self, k: usize, l: usize, g: usize) -> Option<(usize, usize)> {
        for (size, is_large) in self.bounds.sizes() {
            let g_rest = match (is_large, g) {
                (true, 0) => continue,
                (true, _) => g - 1,
                (false, _) => g,
            };
            for a in 1..size {
                let b = size - a;
                if a <= k && b <= l && self.get(k - a, l - b, g_rest) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// Part shapes `(left, right)` realizing a feasible entry.
    pub fn decompose(&self, mut k: usize, mut l: usize, mut g: usize) -> Option<Vec<(usize, usize)>> {
        if !self.get(k, l, g) {
            return None;
        }
        let mut parts = Vec::new();
        while (k, l) != (0, 0) {
            let (a, b) = self.last_part(k, l, g).expect("feasible entry has a last part");
            if self.bounds.classify(a + b) == Some(true) {
                g -= 1;
            }
            k -= a;
            l -= b;
            parts.push((a, b));
        }
        Some(parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> BipartiteTable {
        // small = 2, large = 3
        build_bipartite_table(10, SizeBounds::new(7, 3).unwrap()).unwrap()
    }

    #[test]
    fn examples() {
        let t = table();
        assert!(t.get(0, 0, 0));
        assert!(t.get(1, 1, 0));
        assert!(t.get(2, 1, 1));
        assert!((0..=t.large_cap()).all(|g| !t.get(1, 3, g)));
        assert_eq!(t.decompose(2, 1, 1), Some(vec![(2, 1)]));
    }

    #[test]
    fn symmetric() {
        let t = table();
        for k in 0..=5 {
            for l in 0..=5 {
                for g in 0..=t.large_cap() {
                    assert_eq!(t.get(k, l, g), t.get(l, k, g));
                }
            }
        }
    }

    #[test]
    fn rejects_singleton_parts() {
        assert!(build_bipartite_table(4, SizeBounds::new(4, 4).unwrap()).is_err());
    }
}

//! Seeded random instance families.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, Instance, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RandomFamily {
    Tree,
    Grid,
    CycleWithChords,
    Cograph,
    ClusterPlusModulator,
    CliquePlusModulator,
}

impl RandomFamily {
    pub const ALL: [RandomFamily; 6] = [
        RandomFamily::Tree,
        RandomFamily::Grid,
        RandomFamily::CycleWithChords,
        RandomFamily::Cograph,
        RandomFamily::ClusterPlusModulator,
        RandomFamily::CliquePlusModulator,
    ];

    fn name(self) -> &'static str {
        match self {
            RandomFamily::Tree => "tree",
            RandomFamily::Grid => "grid",
            RandomFamily::CycleWithChords => "cycle-with-chords",
            RandomFamily::Cograph => "cograph",
            RandomFamily::ClusterPlusModulator => "cluster-plus-modulator",
            RandomFamily::CliquePlusModulator => "clique-plus-modulator",
        }
    }
}

impl fmt::Display for RandomFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RandomFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RandomFamily::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown family {s:?}")))
    }
}

/// Size parameters. Grids use `rows` x `cols` when given, otherwise the most
/// square factorisation of `n`. Modulator families default to `n / 6`
/// modulator vertices (at least one).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RandomSize {
    pub n: usize,
    pub p: usize,
    pub rows: Option<usize>,
    pub cols: Option<usize>,
    pub modulator: Option<usize>,
}

impl RandomSize {
    pub fn new(n: usize, p: usize) -> Self {
        RandomSize { n, p, ..Default::default() }
    }
}

pub fn gen_random_instance(family: RandomFamily, seed: u64, size: &RandomSize) -> Result<Instance> {
    let bad = |msg: String| Err(Error::InvalidArgument(msg));
    let n = match (family, size.rows, size.cols) {
        (RandomFamily::Grid, Some(r), Some(c)) => r * c,
        _ => size.n,
    };
    if n == 0 {
        return bad("n must be positive".into());
    }
    if size.p == 0 || size.p > n {
        return bad(format!("p = {} outside 1..={n}", size.p));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let graph = match family {
        RandomFamily::Tree => tree(n, &mut rng),
        RandomFamily::Grid => {
            let (rows, cols) = match (size.rows, size.cols) {
                (Some(r), Some(c)) => (r, c),
                (None, None) => {
                    let r = (1..=n).filter(|r| n % r == 0 && r * r <= n).max().expect("1 divides n");
                    (r, n / r)
                }
                _ => return bad("grid needs both rows and cols, or neither".into()),
            };
            Graph::grid(rows, cols)
        }
        RandomFamily::CycleWithChords => {
            if n < 3 {
                return bad("a cycle needs at least 3 vertices".into());
            }
            cycle_with_chords(n, &mut rng)
        }
        RandomFamily::Cograph => cograph(n, &mut rng),
        RandomFamily::ClusterPlusModulator | RandomFamily::CliquePlusModulator => {
            let m = size.modulator.unwrap_or((n / 6).max(1));
            if m == 0 || m >= n {
                return bad(format!("modulator size {m} must lie in 1..{n}"));
            }
            if family == RandomFamily::ClusterPlusModulator {
                cluster_plus_modulator(n, m, &mut rng)
            } else {
                clique_plus_modulator(n, m, &mut rng)
            }
        }
    };
    Instance::new(graph, size.p)
}

/// Comment line recording the generator call.
pub fn random_provenance(family: RandomFamily, seed: u64, size: &RandomSize) -> Vec<String> {
    let mut line = format!("generator=random kind={family} seed={seed} n={} p={}", size.n, size.p);
    if let (Some(r), Some(c)) = (size.rows, size.cols) {
        line.push_str(&format!(" rows={r} cols={c}"));
    }
    if let Some(m) = size.modulator {
        line.push_str(&format!(" modulator={m}"));
    }
    vec![line]
}

fn build(n: usize, edges: &[(Vertex, Vertex)]) -> Graph {
    Graph::from_edges_dedup(n, edges).expect("generated edges are in range")
}

fn tree(n: usize, rng: &mut ChaCha8Rng) -> Graph {
    let edges: Vec<_> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    build(n, &edges)
}

fn cycle_with_chords(n: usize, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
    for _ in 0..n / 4 {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v {
            edges.push((u.min(v), u.max(v)));
        }
    }
    build(n, &edges)
}

/// Random co-tree: merge random pieces by union or join, ending with a join
/// so the result is connected.
fn cograph(n: usize, rng: &mut ChaCha8Rng) -> Graph {
    let mut pieces: Vec<Vec<Vertex>> = (0..n).map(|v| vec![v]).collect();
    let mut edges = Vec::new();
    while pieces.len() > 1 {
        let i = rng.gen_range(0..pieces.len());
        let a = pieces.swap_remove(i);
        let j = rng.gen_range(0..pieces.len());
        let b = pieces.swap_remove(j);
        if pieces.is_empty() || rng.gen_bool(0.5) {
            for &u in &a {
                edges.extend(b.iter().map(|&v| (u, v)));
            }
        }
        pieces.push(a.into_iter().chain(b).collect());
    }
    build(n, &edges)
}

fn cluster_plus_modulator(n: usize, m: usize, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges = Vec::new();
    let rest: Vec<Vertex> = (m..n).collect();
    let mut cliques: Vec<Vec<Vertex>> = Vec::new();
    let mut i = 0;
    while i < rest.len() {
        let size = rng.gen_range(1..=4).min(rest.len() - i);
        cliques.push(rest[i..i + size].to_vec());
        i += size;
    }
    for clique in &cliques {
        for (a, &u) in clique.iter().enumerate() {
            edges.extend(clique[a + 1..].iter().map(|&v| (u, v)));
        }
        let anchor = rng.gen_range(0..m);
        edges.push((anchor, *clique.choose(rng).expect("clique is non-empty")));
        for &v in clique {
            if rng.gen_bool(0.2) {
                edges.push((rng.gen_range(0..m), v));
            }
        }
    }
    for x in 0..m {
        edges.push((x, rng.gen_range(m..n)));
    }
    connect(n, edges, &(0..m).collect::<Vec<_>>())
}

fn clique_plus_modulator(n: usize, m: usize, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges = Vec::new();
    for u in m..n {
        edges.extend((u + 1..n).map(|v| (u, v)));
    }
    for x in 0..m {
        edges.push((x, rng.gen_range(m..n)));
        for v in m..n {
            if rng.gen_bool(0.3) {
                edges.push((x, v));
            }
        }
        for y in x + 1..m {
            if rng.gen_bool(0.3) {
                edges.push((x, y));
            }
        }
    }
    build(n, &edges)
}

/// Joins components through their smallest `hubs` vertex. Every component
/// must contain one.
fn connect(n: usize, mut edges: Vec<(Vertex, Vertex)>, hubs: &[Vertex]) -> Graph {
    loop {
        let graph = build(n, &edges);
        let comps = graph.components_avoiding(&[]);
        if comps.len() == 1 {
            return graph;
        }
        let hub = |c: &Vec<Vertex>| *c.iter().find(|v| hubs.contains(v)).expect("component holds a hub");
        edges.push((hub(&comps[0]), hub(&comps[1])));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analyzers::{build_cotree, find_modulator, Family};

    #[test]
    fn reproducible() {
        for family in RandomFamily::ALL {
            let size = RandomSize::new(10, 2);
            let a = gen_random_instance(family, 7, &size).unwrap();
            let b = gen_random_instance(family, 7, &size).unwrap();
            assert_eq!(a, b, "{family}");
            assert!(a.graph().is_connected());
        }
    }

    #[test]
    fn grid_ignores_seed() {
        let size = RandomSize { n: 12, p: 4, rows: Some(3), cols: Some(4), modulator: None };
        let a = gen_random_instance(RandomFamily::Grid, 1, &size).unwrap();
        assert_eq!(a.graph(), &Graph::grid(3, 4));
        assert_eq!(a, gen_random_instance(RandomFamily::Grid, 99, &size).unwrap());
    }

    #[test]
    fn families_have_their_structure() {
        let cograph = gen_random_instance(RandomFamily::Cograph, 1, &RandomSize::new(9, 3)).unwrap();
        assert!(build_cotree(cograph.graph()).is_some());
        let size = RandomSize { modulator: Some(2), ..RandomSize::new(14, 3) };
        let cluster = gen_random_instance(RandomFamily::ClusterPlusModulator, 3, &size).unwrap();
        assert!(find_modulator(cluster.graph(), Family::ToCluster, 2).is_some());
        let clique = gen_random_instance(RandomFamily::CliquePlusModulator, 3, &size).unwrap();
        assert!(find_modulator(clique.graph(), Family::ToClique, 2).is_some());
    }

    #[test]
    fn rejects_bad_sizes() {
        assert!(gen_random_instance(RandomFamily::Tree, 0, &RandomSize::new(0, 1)).is_err());
        assert!(gen_random_instance(RandomFamily::Tree, 0, &RandomSize::new(4, 5)).is_err());
        assert!(gen_random_instance(RandomFamily::CycleWithChords, 0, &RandomSize::new(2, 1)).is_err());
        let size = RandomSize { modulator: Some(5), ..RandomSize::new(5, 1) };
        assert!(gen_random_instance(RandomFamily::CliquePlusModulator, 0, &size).is_err());
        assert_eq!("cograph".parse::<RandomFamily>().unwrap(), RandomFamily::Cograph);
        assert!("forest".parse::<RandomFamily>().is_err());
    }
}

#![allow(dead_code)]

use std::collections::BTreeSet;

use ecp::Graph;

/// All connected graphs on `n` vertices up to isomorphism.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    if n == 1 {
        return vec![Graph::empty(1)];
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for smaller in connected_graphs(n - 1) {
        let base: Vec<(usize, usize)> = smaller.edges().collect();
        for mask in 1u32..1 << (n - 1) {
            let mut edges = base.clone();
            edges.extend((0..n - 1).filter(|&v| mask >> v & 1 == 1).map(|v| (v, n - 1)));
            let graph = Graph::from_edges(n, &edges).unwrap();
            if seen.insert(canonical_code(&graph)) {
                out.push(graph);
            }
        }
    }
    out
}

/// Smallest adjacency bitmask over vertex orders that respect a degree-based
/// refinement; equal codes mean isomorphic graphs.
pub fn canonical_code(graph: &Graph) -> u64 {
    let n = graph.vertex_count();
    let invariant = |v: usize| {
        let mut nd: Vec<usize> = graph.neighbors(v).iter().map(|&w| graph.degree(w)).collect();
        nd.sort_unstable();
        (graph.degree(v), nd)
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| invariant(v));
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match classes.last_mut() {
            Some(class) if invariant(class[0]) == invariant(v) => class.push(v),
            _ => classes.push(vec![v]),
        }
    }
    let mut best = u64::MAX;
    let mut position = vec![0usize; n];
    permute_classes(graph, &classes, 0, &mut Vec::new(), &mut position, &mut best);
    best
}

fn permute_classes(
    graph: &Graph,
    classes: &[Vec<usize>],
    depth: usize,
    prefix: &mut Vec<usize>,
    position: &mut [usize],
    best: &mut u64,
) {
    if depth == classes.len() {
        for (i, &v) in prefix.iter().enumerate() {
            position[v] = i;
        }
        let mut code = 0u64;
        for (u, v) in graph.edges() {
            let (a, b) = (position[u].min(position[v]), position[u].max(position[v]));
            code |= 1 << (a * graph.vertex_count() + b);
        }
        *best = (*best).min(code);
        return;
    }
    let mut class = classes[depth].clone();
    let len = class.len();
    heap_permutations(&mut class, len, &mut |perm| {
        let len = prefix.len();
        prefix.extend_from_slice(perm);
        permute_classes(graph, classes, depth + 1, prefix, position, best);
        prefix.truncate(len);
    });
}

fn heap_permutations(items: &mut Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k <= 1 {
        visit(items);
        return;
    }
    for i in 0..k {
        heap_permutations(items, k - 1, visit);
        let j = if k.is_multiple_of(2) { i } else { 0 };
        items.swap(j, k - 1);
    }
}

/// Connected graphs with at most `max_n` vertices.
pub fn small_graphs(max_n: usize) -> Vec<Graph> {
    (1..=max_n).flat_map(connected_graphs).collect()
}

/// Random connected graphs: a random spanning tree plus extra edges at a
/// random density, so both sparse and dense graphs show up.
pub fn arb_connected_graph(min_n: usize, max_n: usize) -> impl proptest::strategy::Strategy<Value = Graph> {
    use proptest::prelude::*;
    (min_n..=max_n)
        .prop_flat_map(|n| {
            let parents: Vec<BoxedStrategy<usize>> = (1..n).map(|v| (0..v).boxed()).collect();
            let pairs = n * (n - 1) / 2;
            (Just(n), parents, proptest::collection::vec(0u32..100, pairs), 0u32..=60)
        })
        .prop_map(|(n, parents, coins, density)| {
            let mut edges: Vec<(usize, usize)> = parents.iter().enumerate().map(|(i, &p)| (p, i + 1)).collect();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if coins[k] < density {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::from_edges_dedup(n, &edges).unwrap()
        })
}

/// A random connected graph together with a part count.
pub fn arb_instance(min_n: usize, max_n: usize) -> impl proptest::strategy::Strategy<Value = ecp::Instance> {
    use proptest::prelude::*;
    arb_connected_graph(min_n, max_n)
        .prop_flat_map(|g| {
            let n = g.vertex_count();
            (Just(g), 1..=n)
        })
        .prop_map(|(g, p)| ecp::Instance::new(g, p).unwrap())
}

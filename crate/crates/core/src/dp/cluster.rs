//! Solver for graphs close to a disjoint union of cliques.
//!
//! Every part either meets the modulator `M` or lies inside one clique. For
//! each partition of `M` into blocks, modulator vertices may graft one or two
//! clique vertices to their block so that the block becomes connected; any
//! further vertex a block takes from a clique only needs one neighbour of the
//! block in that clique, which a bipartite matching certifies. A DP over the
//! cliques then tracks block sizes and the large parts formed inside cliques.

use indexmap::IndexMap;

use super::matching::hopcroft_karp;
use crate::analyzers::{is_in_family, Family};
use crate::error::{Error, Result};
use crate::graph::{Graph, Instance, Partition, SizeBounds, Vertex};
use crate::search::{Search, SearchLimits};

pub fn solve_cluster_modulator(instance: &Instance, modulator: &[Vertex]) -> Result<Option<Partition>> {
    solve_cluster_modulator_in(instance, modulator, &mut Search::new(&SearchLimits::default()))
}

pub fn solve_cluster_modulator_in(
    instance: &Instance,
    modulator: &[Vertex],
    search: &mut Search,
) -> Result<Option<Partition>> {
    let graph = instance.graph();
    if modulator.iter().any(|&v| v >= graph.vertex_count()) || !is_in_family(graph, Family::ToCluster, modulator) {
        return Err(Error::Precondition("deleting the modulator does not leave a cluster graph".into()));
    }
    let mut modulator = modulator.to_vec();
    modulator.sort_unstable();
    modulator.dedup();
    let ctx = Context::new(instance, &modulator);
    let max_blocks = modulator.len().min(instance.parts());
    let mut found = None;
    for_each_set_partition(modulator.len(), max_blocks, &mut |blocks| {
        if found.is_some() {
            return Ok(());
        }
        search.tick()?;
        let blocks: Vec<Vec<Vertex>> = blocks.iter().map(|b| b.iter().map(|&i| modulator[i]).collect()).collect();
        let mut grafts = vec![Vec::new(); modulator.len()];
        ctx.grafts(&blocks, 0, &mut grafts, &mut vec![false; graph.vertex_count()], search, &mut |grafts, search| {
            if found.is_none() {
                found = ctx.solve_layout(&blocks, grafts, search)?;
            }
            Ok(found.is_some())
        })?;
        Ok(())
    })?;
    Ok(found)
}

/// Calls `visit` with every partition of `0..k` into at most `max_blocks`
/// blocks, blocks ordered by minimum element.
pub(crate) fn for_each_set_partition(
    k: usize,
    max_blocks: usize,
    visit: &mut dyn FnMut(&[Vec<usize>]) -> Result<()>,
) -> Result<()> {
    fn rec(
        i: usize,
        k: usize,
        max_blocks: usize,
        blocks: &mut Vec<Vec<usize>>,
        visit: &mut dyn FnMut(&[Vec<usize>]) -> Result<()>,
    ) -> Result<()> {
        if i == k {
            return visit(blocks);
        }
        for b in 0..blocks.len() {
            blocks[b].push(i);
            rec(i + 1, k, max_blocks, blocks, visit)?;
            blocks[b].pop();
        }
        if blocks.len() < max_blocks {
            blocks.push(vec![i]);
            rec(i + 1, k, max_blocks, blocks, visit)?;
            blocks.pop();
        }
        Ok(())
    }
    if k == 0 {
        return visit(&[]);
    }
    rec(0, k, max_blocks, &mut Vec::new(), visit)
}

struct Context<'a> {
    graph: &'a Graph,
    bounds: SizeBounds,
    modulator: &'a [Vertex],
    in_modulator: Vec<bool>,
    cliques: Vec<Vec<Vertex>>,
    clique_of: Vec<usize>,
    /// Clique vertices with the same neighbours in `M` are interchangeable;
    /// `twin_rep[v]` is the smallest such vertex of v's clique.
    twin_rep: Vec<Vertex>,
}

type GraftVisit<'v> = dyn FnMut(&[Vec<Vertex>], &mut Search) -> Result<bool> + 'v;

impl<'a> Context<'a> {
    fn new(instance: &'a Instance, modulator: &'a [Vertex]) -> Self {
        let graph = instance.graph();
        let n = graph.vertex_count();
        let mut in_modulator = vec![false; n];
        for &v in modulator {
            in_modulator[v] = true;
        }
        let cliques = graph.components_avoiding(modulator);
        let mut clique_of = vec![usize::MAX; n];
        for (c, clique) in cliques.iter().enumerate() {
            for &v in clique {
                clique_of[v] = c;
            }
        }
        let m_nbrs =
            |v: Vertex| -> Vec<Vertex> { graph.neighbors(v).iter().copied().filter(|&w| in_modulator[w]).collect() };
        let mut twin_rep: Vec<Vertex> = (0..n).collect();
        for clique in &cliques {
            for (i, &v) in clique.iter().enumerate() {
                if let Some(&w) = clique[..i].iter().find(|&&w| m_nbrs(w) == m_nbrs(v)) {
                    twin_rep[v] = twin_rep[w];
                }
            }
        }
        Context { graph, bounds: instance.bounds(), modulator, in_modulator, cliques, clique_of, twin_rep }
    }

    /// First unused vertex in each twin class of `candidates`.
    fn twin_choices(&self, candidates: impl Iterator<Item = Vertex>, used: &[bool]) -> Vec<Vertex> {
        let mut reps: Vec<Vertex> = Vec::new();
        let mut out = Vec::new();
        for v in candidates {
            if used[v] || reps.contains(&self.twin_rep[v]) {
                continue;
            }
            reps.push(self.twin_rep[v]);
            out.push(v);
        }
        out
    }

    /// Enumerates per-modulator-vertex grafts (none, one or two clique
    /// vertices, all distinct) that make every block connected and where no
    /// single vertex's graft is redundant.
    fn grafts(
        &self,
        blocks: &[Vec<Vertex>],
        i: usize,
        grafts: &mut Vec<Vec<Vertex>>,
        used: &mut Vec<bool>,
        search: &mut Search,
        visit: &mut GraftVisit<'_>,
    ) -> Result<bool> {
        search.tick()?;
        if i == self.modulator.len() {
            if self.grafts_are_minimal(blocks, grafts) {
                return visit(grafts, search);
            }
            return Ok(false);
        }
        let u = self.modulator[i];
        let block = blocks.iter().find(|b| b.contains(&u)).expect("u lies in a block");
        if self.graph.connected_set(block) {
            return self.grafts(blocks, i + 1, grafts, used, search, visit);
        }
        if self.grafts(blocks, i + 1, grafts, used, search, visit)? {
            return Ok(true);
        }
        let firsts =
            self.twin_choices(self.graph.neighbors(u).iter().copied().filter(|&v| !self.in_modulator[v]), used);
        for v1 in firsts {
            used[v1] = true;
            grafts[i] = vec![v1];
            if self.grafts(blocks, i + 1, grafts, used, search, visit)? {
                return Ok(true);
            }
            let seconds = self.twin_choices(self.cliques[self.clique_of[v1]].iter().copied(), used);
            for v2 in seconds {
                used[v2] = true;
                grafts[i] = vec![v1, v2];
                if self.grafts(blocks, i + 1, grafts, used, search, visit)? {
                    return Ok(true);
                }
                used[v2] = false;
            }
            used[v1] = false;
            grafts[i].clear();
        }
        Ok(false)
    }

    fn block_with_grafts(&self, block: &[Vertex], grafts: &[Vec<Vertex>], skip: Option<usize>) -> Vec<Vertex> {
        let mut members = block.to_vec();
        for (i, &u) in self.modulator.iter().enumerate() {
            if Some(i) != skip && block.contains(&u) {
                members.extend_from_slice(&grafts[i]);
            }
        }
        members
    }

    fn grafts_are_minimal(&self, blocks: &[Vec<Vertex>], grafts: &[Vec<Vertex>]) -> bool {
        for block in blocks {
            if !self.graph.connected_set(&self.block_with_grafts(block, grafts, None)) {
                return false;
            }
        }
        for (i, &u) in self.modulator.iter().enumerate() {
            if grafts[i].is_empty() {
                continue;
            }
            let block = blocks.iter().find(|b| b.contains(&u)).expect("u lies in a block");
            if self.graph.connected_set(&self.block_with_grafts(block, grafts, Some(i))) {
                return false;
            }
        }
        true
    }

    /// Runs the clique DP for fixed blocks and grafts.
    fn solve_layout(
        &self,
        blocks: &[Vec<Vertex>],
        grafts: &[Vec<Vertex>],
        search: &mut Search,
    ) -> Result<Option<Partition>> {
        let q = blocks.len();
        let large = self.bounds.large;
        let mut owner = vec![usize::MAX; self.graph.vertex_count()];
        let mut start = Vec::with_capacity(q);
        for (b, block) in blocks.iter().enumerate() {
            let members = self.block_with_grafts(block, grafts, None);
            for &v in &members {
                owner[v] = b;
            }
            start.push(members.len());
        }
        if start.iter().any(|&s| s > large) {
            return Ok(None);
        }
        let layers: Vec<Layer> = self.cliques.iter().map(|clique| self.layer(clique, blocks, &owner)).collect();
        let mut tables: Vec<IndexMap<DpState, Step>> = Vec::with_capacity(layers.len() + 1);
        let mut first = IndexMap::new();
        first.insert(DpState { j: start.iter().map(|&s| s as u16).collect(), g: 0 }, Step::default());
        tables.push(first);
        for layer in &layers {
            let next = self.advance(tables.last().expect("a table"), layer, search)?;
            search.add_states(next.len() as u64);
            if next.is_empty() {
                return Ok(None);
            }
            tables.push(next);
        }
        let last = tables.last().expect("a table");
        let accept = last.keys().position(|s| {
            let classes: Option<Vec<bool>> = s.j.iter().map(|&j| self.bounds.classify(j as usize)).collect();
            classes.is_some_and(|c| c.iter().filter(|&&l| l).count() + s.g as usize == self.bounds.num_large)
        });
        let Some(mut index) = accept else {
            return Ok(None);
        };
        // Walk back, materializing each clique.
        let mut parts: Vec<Vec<Vertex>> = blocks.iter().map(|b| self.block_with_grafts(b, grafts, None)).collect();
        for (layer_index, layer) in layers.iter().enumerate().rev() {
            let (_, step) = tables[layer_index + 1].get_index(index).expect("back-pointer in range");
            self.materialize(layer, step, &mut parts);
            index = step.prev;
        }
        Ok(Some(Partition::from_parts(self.graph.vertex_count(), &parts)?))
    }

    fn layer(&self, clique: &[Vertex], blocks: &[Vec<Vertex>], owner: &[usize]) -> Layer {
        let q = blocks.len();
        let free: Vec<Vertex> = clique.iter().copied().filter(|&v| owner[v] == usize::MAX).collect();
        let mut grafted = 0u32;
        for &v in clique {
            if owner[v] != usize::MAX {
                grafted |= 1 << owner[v];
            }
        }
        // Blocks with a graft here connect any further vertex for free; the
        // others need a distinct neighbour in this clique.
        let adj: Vec<Vec<usize>> = (0..q)
            .map(|b| {
                free.iter()
                    .enumerate()
                    .filter(|&(_, &v)| blocks[b].iter().any(|&u| self.graph.has_edge(u, v)))
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        let matchable = (0u32..1 << q)
            .map(|mask| {
                if mask & grafted != 0 {
                    return false;
                }
                let sub: Vec<Vec<usize>> = (0..q).filter(|&b| mask >> b & 1 == 1).map(|b| adj[b].clone()).collect();
                hopcroft_karp(&sub, free.len()).len() == sub.len()
            })
            .collect();
        Layer { free, grafted, adj, matchable }
    }

    fn advance(
        &self,
        table: &IndexMap<DpState, Step>,
        layer: &Layer,
        search: &mut Search,
    ) -> Result<IndexMap<DpState, Step>> {
        let mut out: IndexMap<DpState, Step> = IndexMap::new();
        let free = layer.free.len();
        for (prev, (state, _)) in table.iter().enumerate() {
            let mut donation = vec![0u16; state.j.len()];
            self.donations(state, layer, 0, free, &mut donation, &mut |donation, taken| {
                search.tick()?;
                let needs_anchor = donation
                    .iter()
                    .enumerate()
                    .filter(|&(b, &d)| d > 0 && layer.grafted >> b & 1 == 0)
                    .fold(0u32, |m, (b, _)| m | 1 << b);
                if !layer.matchable[needs_anchor as usize] {
                    return Ok(());
                }
                let rest = free - taken;
                let cap = self.bounds.num_large - state.g as usize;
                for (small_parts, large_parts) in self.bounds.decompositions(rest, cap) {
                    let j: Vec<u16> = state.j.iter().zip(donation).map(|(&j, &d)| j + d).collect();
                    let next = DpState { j, g: state.g + large_parts as u16 };
                    out.entry(next).or_insert_with(|| Step {
                        prev,
                        donation: donation.to_vec(),
                        internal: (small_parts, large_parts),
                    });
                }
                Ok(())
            })?;
        }
        Ok(out)
    }

    fn donations(
        &self,
        state: &DpState,
        layer: &Layer,
        b: usize,
        left: usize,
        donation: &mut Vec<u16>,
        visit: &mut dyn FnMut(&[u16], usize) -> Result<()>,
    ) -> Result<()> {
        if b == donation.len() {
            let taken = layer.free.len() - left;
            return visit(donation, taken);
        }
        let room = self.bounds.large - state.j[b] as usize;
        let reachable = layer.grafted >> b & 1 == 1 || !layer.adj[b].is_empty();
        let max = if reachable { room.min(left) } else { 0 };
        for d in 0..=max {
            donation[b] = d as u16;
            self.donations(state, layer, b + 1, left - d, donation, visit)?;
        }
        donation[b] = 0;
        Ok(())
    }

    fn materialize(&self, layer: &Layer, step: &Step, parts: &mut Vec<Vec<Vertex>>) {
        let q = layer.adj.len();
        let mut taken = vec![false; layer.free.len()];
        let mut remaining: Vec<usize> = step.donation.iter().map(|&d| d as usize).collect();
        let needy: Vec<usize> = (0..q).filter(|&b| remaining[b] > 0 && layer.grafted >> b & 1 == 0).collect();
        let sub: Vec<Vec<usize>> = needy.iter().map(|&b| layer.adj[b].clone()).collect();
        for (i, f) in hopcroft_karp(&sub, layer.free.len()) {
            let b = needy[i];
            taken[f] = true;
            parts[b].push(layer.free[f]);
            remaining[b] -= 1;
        }
        let mut cursor = 0;
        let mut next_free = || {
            while taken[cursor] {
                cursor += 1;
            }
            taken[cursor] = true;
            layer.free[cursor]
        };
        for b in 0..q {
            for _ in 0..remaining[b] {
                let v = next_free();
                parts[b].push(v);
            }
        }
        let (small_parts, large_parts) = step.internal;
        for size in std::iter::repeat_n(self.bounds.large, large_parts)
            .chain(std::iter::repeat_n(self.bounds.small, small_parts))
        {
            let part = (0..size).map(|_| next_free()).collect();
            parts.push(part);
        }
    }
}

struct Layer {
    free: Vec<Vertex>,
    grafted: u32,
    adj: Vec<Vec<usize>>,
    matchable: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct DpState {
    j: Vec<u16>,
    g: u16,
}

#[derive(Clone, Debug, Default)]
struct Step {
    prev: usize,
    donation: Vec<u16>,
    internal: (usize, usize),
}

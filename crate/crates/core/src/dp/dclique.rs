//! Solver for graphs that become a clique after deleting a few vertices.
//!
//! Each part meeting the modulator `M` takes a block of `M` and some clique
//! vertices. Clique vertices with equal neighbourhoods in `M` are
//! interchangeable, so a block only needs to pick, per twin type, whether it
//! uses one as a connector; the rest of its clique vertices can be chosen
//! greedily because every clique vertex is adjacent to every connector.

use crate::analyzers::{is_in_family, Family};
use crate::error::{Error, Result};
use crate::graph::{Graph, Instance, Partition, SizeBounds, Vertex};
use crate::search::{Search, SearchLimits};

use super::cluster::for_each_set_partition;

pub fn solve_clique_modulator(instance: &Instance, modulator: &[Vertex]) -> Result<Option<Partition>> {
    solve_clique_modulator_in(instance, modulator, &mut Search::new(&SearchLimits::default()))
}

pub fn solve_clique_modulator_in(
    instance: &Instance,
    modulator: &[Vertex],
    search: &mut Search,
) -> Result<Option<Partition>> {
    let graph = instance.graph();
    if modulator.iter().any(|&v| v >= graph.vertex_count()) || !is_in_family(graph, Family::ToClique, modulator) {
        return Err(Error::Precondition("deleting the modulator does not leave a clique".into()));
    }
    let mut modulator = modulator.to_vec();
    modulator.sort_unstable();
    modulator.dedup();
    let ctx = Context::new(instance, &modulator);
    let mut found = None;
    for_each_set_partition(modulator.len(), modulator.len().min(instance.parts()), &mut |blocks| {
        if found.is_some() {
            return Ok(());
        }
        let blocks: Vec<Vec<Vertex>> = blocks.iter().map(|b| b.iter().map(|&i| modulator[i]).collect()).collect();
        for labels in 0u32..1 << blocks.len() {
            search.tick()?;
            if let Some(partition) = ctx.try_labels(&blocks, labels, search)? {
                found = Some(partition);
                return Ok(());
            }
        }
        Ok(())
    })?;
    Ok(found)
}

struct Context<'a> {
    graph: &'a Graph,
    bounds: SizeBounds,
    /// Clique vertices grouped by neighbourhood in `M`.
    types: Vec<Vec<Vertex>>,
    clique_size: usize,
}

impl<'a> Context<'a> {
    fn new(instance: &'a Instance, modulator: &[Vertex]) -> Self {
        let graph = instance.graph();
        let mut in_modulator = vec![false; graph.vertex_count()];
        for &v in modulator {
            in_modulator[v] = true;
        }
        let clique: Vec<Vertex> = graph.vertices().filter(|&v| !in_modulator[v]).collect();
        let signature =
            |v: Vertex| -> Vec<Vertex> { graph.neighbors(v).iter().copied().filter(|&w| in_modulator[w]).collect() };
        let mut types: Vec<Vec<Vertex>> = Vec::new();
        for &v in &clique {
            match types.iter_mut().find(|t| signature(t[0]) == signature(v)) {
                Some(t) => t.push(v),
                None => types.push(vec![v]),
            }
        }
        Context { graph, bounds: instance.bounds(), types, clique_size: clique.len() }
    }

    /// Bit `b` of `labels` marks block `b` as a large part.
    fn try_labels(&self, blocks: &[Vec<Vertex>], labels: u32, search: &mut Search) -> Result<Option<Partition>> {
        let b = &self.bounds;
        let mut needs = Vec::with_capacity(blocks.len());
        let mut large_blocks = 0;
        for (i, block) in blocks.iter().enumerate() {
            let is_large = labels >> i & 1 == 1;
            if is_large && !b.is_split() {
                return Ok(None);
            }
            large_blocks += usize::from(is_large);
            let size = if is_large { b.large } else { b.small };
            if block.len() > size {
                return Ok(None);
            }
            needs.push(size - block.len());
        }
        if large_blocks > b.num_large {
            return Ok(None);
        }
        let taken: usize = needs.iter().sum();
        if taken > self.clique_size {
            return Ok(None);
        }
        let rest = self.clique_size - taken;
        let Some(&(small_parts, large_parts)) =
            b.decompositions(rest, b.num_large - large_blocks).iter().find(|&&(_, l)| l == b.num_large - large_blocks)
        else {
            return Ok(None);
        };
        let options = blocks
            .iter()
            .zip(&needs)
            .map(|(block, &need)| self.connectors(block, need, search))
            .collect::<Result<Vec<_>>>()?;
        let mut chosen = vec![Vec::new(); blocks.len()];
        let mut load = vec![0usize; self.types.len()];
        if !self.pick(&options, 0, &mut chosen, &mut load, search)? {
            return Ok(None);
        }
        Ok(Some(self.realize(blocks, &needs, &chosen, small_parts, large_parts)?))
    }

    /// Minimal type sets that connect `block` using at most `need` clique vertices.
    fn connectors(&self, block: &[Vertex], need: usize, search: &mut Search) -> Result<Vec<Vec<usize>>> {
        let components = self.graph.components_where(|v| block.contains(&v));
        if need == 0 {
            return Ok(if components.len() == 1 { vec![Vec::new()] } else { Vec::new() });
        }
        // touches[t][c]: type t has a neighbour in component c.
        let touches: Vec<Vec<bool>> = self
            .types
            .iter()
            .map(|members| {
                components.iter().map(|comp| comp.iter().any(|&u| self.graph.has_edge(u, members[0]))).collect()
            })
            .collect();
        let relevant: Vec<usize> = (0..self.types.len()).filter(|&t| touches[t].iter().any(|&x| x)).collect();
        let covers = |set: &[usize]| -> bool {
            !set.is_empty() && (0..components.len()).all(|c| set.iter().any(|&t| touches[t][c]))
        };
        // A minimal cover never needs more types than there are components.
        let limit = need.min(components.len());
        let mut out = Vec::new();
        let mut set = Vec::new();
        self.combinations(&relevant, 0, limit, &mut set, &mut |set| {
            search.tick()?;
            let minimal = (0..set.len()).all(|i| {
                let mut smaller = set.to_vec();
                smaller.remove(i);
                !covers(&smaller)
            });
            if covers(set) && minimal {
                out.push(set.to_vec());
            }
            Ok(())
        })?;
        Ok(out)
    }

    fn combinations(
        &self,
        items: &[usize],
        from: usize,
        limit: usize,
        set: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> Result<()>,
    ) -> Result<()> {
        if !set.is_empty() {
            visit(set)?;
        }
        if set.len() == limit {
            return Ok(());
        }
        for i in from..items.len() {
            set.push(items[i]);
            self.combinations(items, i + 1, limit, set, visit)?;
            set.pop();
        }
        Ok(())
    }

    fn pick(
        &self,
        options: &[Vec<Vec<usize>>],
        i: usize,
        chosen: &mut [Vec<usize>],
        load: &mut [usize],
        search: &mut Search,
    ) -> Result<bool> {
        if i == options.len() {
            return Ok(true);
        }
        for set in &options[i] {
            search.tick()?;
            if set.iter().any(|&t| load[t] == self.types[t].len()) {
                continue;
            }
            for &t in set {
                load[t] += 1;
            }
            chosen[i] = set.clone();
            if self.pick(options, i + 1, chosen, load, search)? {
                return Ok(true);
            }
            for &t in set {
                load[t] -= 1;
            }
        }
        Ok(false)
    }

    fn realize(
        &self,
        blocks: &[Vec<Vertex>],
        needs: &[usize],
        chosen: &[Vec<usize>],
        small_parts: usize,
        large_parts: usize,
    ) -> Result<Partition> {
        let mut used = vec![false; self.graph.vertex_count()];
        let mut parts: Vec<Vec<Vertex>> = blocks.to_vec();
        for (b, set) in chosen.iter().enumerate() {
            for &t in set {
                let v = *self.types[t].iter().find(|&&v| !used[v]).expect("type has capacity");
                used[v] = true;
                parts[b].push(v);
            }
        }
        let mut pool = self.types.iter().flatten().copied().filter(|&v| !used[v]).collect::<Vec<_>>();
        pool.sort_unstable();
        let mut pool = pool.into_iter();
        for (b, &need) in needs.iter().enumerate() {
            let extra = need - chosen[b].len();
            parts[b].extend(pool.by_ref().take(extra));
        }
        for size in std::iter::repeat_n(self.bounds.large, large_parts)
            .chain(std::iter::repeat_n(self.bounds.small, small_parts))
        {
            parts.push(pool.by_ref().take(size).collect());
        }
        Partition::from_parts(self.graph.vertex_count(), &parts)
    }
}

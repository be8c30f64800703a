//! Configuration programs over the components left after deleting a small
//! modulator `X`.
//!
//! A guess fixes the blocks `X_1..X_q` of `X` that share a part. Every piece
//! (component of `G - X`) then picks one configuration: which of its vertices
//! join which block, and which form parts of their own. Pieces with the same
//! configuration signatures are interchangeable, so the program counts how
//! many pieces of each kind use each configuration. Blocks that are not
//! connected by their own edges need guessed connections, each realised by
//! some chunk component seeing both ends.

use std::collections::BTreeMap;

use crate::dp::for_each_set_partition;
use crate::error::{Error, Result};
use crate::graph::{verify_partition, Graph, Instance, Partition, SizeBounds, Vertex};
use crate::search::Search;

use super::program::{solve_integer_program_in, IntegerProgram, ProgramOutcome, Relation};

/// One way to distribute a piece over the modulator blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieceConfiguration {
    /// Piece vertices in ascending order.
    pub piece: Vec<Vertex>,
    /// Part id per piece vertex. Ids below the block count join that block;
    /// larger ids are parts lying inside the piece.
    pub assignment: Vec<usize>,
    /// Vertices given to each block.
    pub sizes: Vec<usize>,
    pub inner_small: usize,
    pub inner_large: usize,
    /// Non-adjacent pairs of one block that a single chunk component sees.
    pub connections: Vec<(Vertex, Vertex)>,
}

type Signature = (Vec<usize>, usize, usize, Vec<(Vertex, Vertex)>);

impl PieceConfiguration {
    fn signature(&self) -> Signature {
        (self.sizes.clone(), self.inner_small, self.inner_large, self.connections.clone())
    }
}

/// All valid configurations of `piece`, one per distinct signature, in
/// enumeration order.
pub fn build_piece_configurations(
    graph: &Graph,
    piece: &[Vertex],
    modulator_parts: &[Vec<Vertex>],
    bounds: &SizeBounds,
) -> Vec<PieceConfiguration> {
    let mut piece = piece.to_vec();
    piece.sort_unstable();
    let q = modulator_parts.len();
    let room: Vec<usize> = modulator_parts.iter().map(|x| bounds.large.saturating_sub(x.len())).collect();
    let mut out: Vec<PieceConfiguration> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut assignment = Vec::with_capacity(piece.len());
    let mut load = vec![0usize; q];
    let mut inner: Vec<usize> = Vec::new();
    enumerate(piece.len(), q, bounds, &room, &mut assignment, &mut load, &mut inner, &mut |assignment| {
        if let Some(config) = evaluate(graph, &piece, modulator_parts, bounds, assignment) {
            if seen.insert(config.signature()) {
                out.push(config);
            }
        }
    });
    out
}

#[allow(clippy::too_many_arguments)]
fn enumerate(
    piece_len: usize,
    q: usize,
    bounds: &SizeBounds,
    room: &[usize],
    assignment: &mut Vec<usize>,
    load: &mut Vec<usize>,
    inner: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    let i = assignment.len();
    if i == piece_len {
        visit(assignment);
        return;
    }
    for b in 0..q {
        if load[b] < room[b] {
            load[b] += 1;
            assignment.push(b);
            enumerate(piece_len, q, bounds, room, assignment, load, inner, visit);
            assignment.pop();
            load[b] -= 1;
        }
    }
    if bounds.small > piece_len {
        return;
    }
    for j in 0..=inner.len() {
        if j == inner.len() {
            inner.push(0);
        }
        if inner[j] < bounds.large {
            inner[j] += 1;
            assignment.push(q + j);
            enumerate(piece_len, q, bounds, room, assignment, load, inner, visit);
            assignment.pop();
            inner[j] -= 1;
        }
        if inner[j] == 0 {
            inner.pop();
        }
    }
}

fn evaluate(
    graph: &Graph,
    piece: &[Vertex],
    blocks: &[Vec<Vertex>],
    bounds: &SizeBounds,
    assignment: &[usize],
) -> Option<PieceConfiguration> {
    let q = blocks.len();
    let labels = assignment.iter().max().map_or(0, |&m| m + 1);
    let mut members: Vec<Vec<Vertex>> = vec![Vec::new(); labels.max(q)];
    for (&v, &a) in piece.iter().zip(assignment) {
        members[a].push(v);
    }
    let mut connections = Vec::new();
    for (b, block) in blocks.iter().enumerate() {
        let chunk = &members[b];
        for comp in graph.components_where(|v| chunk.contains(&v)) {
            let seen: Vec<Vertex> =
                block.iter().copied().filter(|&x| comp.iter().any(|&u| graph.has_edge(u, x))).collect();
            if seen.is_empty() {
                return None;
            }
            for (i, &x) in seen.iter().enumerate() {
                for &y in &seen[i + 1..] {
                    if !graph.has_edge(x, y) {
                        connections.push((x.min(y), x.max(y)));
                    }
                }
            }
        }
    }
    connections.sort_unstable();
    connections.dedup();
    let (mut inner_small, mut inner_large) = (0, 0);
    for part in &members[q..] {
        if !graph.connected_set(part) {
            return None;
        }
        match bounds.classify(part.len())? {
            true => inner_large += 1,
            false => inner_small += 1,
        }
    }
    Some(PieceConfiguration {
        piece: piece.to_vec(),
        assignment: assignment.to_vec(),
        sizes: members[..q].iter().map(Vec::len).collect(),
        inner_small,
        inner_large,
        connections,
    })
}

/// Searches every block guess of `modulator` with at most `max_blocks`
/// blocks. Pieces must be small enough to enumerate their assignments.
pub(crate) fn solve_with_modulator(
    instance: &Instance,
    modulator: &[Vertex],
    max_blocks: usize,
    search: &mut Search,
) -> Result<Option<Partition>> {
    let graph = instance.graph();
    let bounds = instance.bounds();
    let pieces = graph.components_avoiding(modulator);
    let mut found = None;
    for_each_set_partition(modulator.len(), max_blocks.min(modulator.len()), &mut |blocks| {
        if found.is_some() {
            return Ok(());
        }
        search.tick()?;
        let blocks: Vec<Vec<Vertex>> = blocks.iter().map(|b| b.iter().map(|&i| modulator[i]).collect()).collect();
        if blocks.iter().any(|b| b.len() > bounds.large) || blocks.len() > bounds.parts {
            return Ok(());
        }
        found = Guess::new(instance, &blocks, &pieces, search)?.solve(search)?;
        Ok(())
    })?;
    Ok(found)
}

/// Pieces grouped by their signature lists.
struct Kind {
    pieces: Vec<usize>,
    signatures: Vec<Signature>,
}

struct Guess<'a> {
    instance: &'a Instance,
    blocks: &'a [Vec<Vertex>],
    pieces: &'a [Vec<Vertex>],
    /// Per piece: configuration by signature.
    configs: Vec<BTreeMap<Signature, PieceConfiguration>>,
    kinds: Vec<Kind>,
}

impl<'a> Guess<'a> {
    fn new(
        instance: &'a Instance,
        blocks: &'a [Vec<Vertex>],
        pieces: &'a [Vec<Vertex>],
        search: &mut Search,
    ) -> Result<Self> {
        let bounds = instance.bounds();
        let mut configs = Vec::with_capacity(pieces.len());
        let mut kinds: Vec<Kind> = Vec::new();
        for (i, piece) in pieces.iter().enumerate() {
            search.tick()?;
            let list = build_piece_configurations(instance.graph(), piece, blocks, &bounds);
            let map: BTreeMap<Signature, PieceConfiguration> = list.into_iter().map(|c| (c.signature(), c)).collect();
            let signatures: Vec<Signature> = map.keys().cloned().collect();
            match kinds.iter_mut().find(|k| k.signatures == signatures) {
                Some(kind) => kind.pieces.push(i),
                None => kinds.push(Kind { pieces: vec![i], signatures }),
            }
            configs.push(map);
        }
        Ok(Guess { instance, blocks, pieces, configs, kinds })
    }

    fn solve(&self, search: &mut Search) -> Result<Option<Partition>> {
        if self.kinds.iter().any(|k| k.signatures.is_empty()) {
            return Ok(None);
        }
        let (base, counts) = self.program();
        // Candidate connections per block, then one spanning choice at a time.
        let graph = self.instance.graph();
        let mut per_block: Vec<(Vec<Vec<Vertex>>, Vec<(Vertex, Vertex)>)> = Vec::new();
        for block in self.blocks {
            let comps = graph.components_where(|v| block.contains(&v));
            let mut pairs: Vec<(Vertex, Vertex)> = self
                .kinds
                .iter()
                .flat_map(|k| k.signatures.iter().flat_map(|s| s.3.iter().copied()))
                .filter(|&(u, v)| block.contains(&u) && block.contains(&v))
                .filter(|&(u, v)| !comps.iter().any(|c| c.contains(&u) && c.contains(&v)))
                .collect();
            pairs.sort_unstable();
            pairs.dedup();
            per_block.push((comps, pairs));
        }
        let mut chosen: Vec<(Vertex, Vertex)> = Vec::new();
        let mut found = None;
        self.connections(
            &per_block,
            0,
            &mut chosen,
            &mut |links, search| {
                let mut ip = base.clone();
                for &(u, v) in links {
                    let terms: Vec<(usize, i64)> =
                        counts.iter().filter(|(s, _)| s.3.contains(&(u, v))).map(|&(_, var)| (var, 1)).collect();
                    ip.add_constraint(format!("link_{u}_{v}"), terms, Relation::Ge, 1);
                }
                if let ProgramOutcome::Solved { values, .. } = solve_integer_program_in(&ip, search)? {
                    let partition = self.decode(&counts, &values)?;
                    if verify_partition(self.instance, &partition)?.is_valid() {
                        found = Some(partition);
                        return Ok(true);
                    }
                }
                Ok(false)
            },
            search,
        )?;
        Ok(found)
    }

    /// Calls `visit` with every choice of connections that makes each block
    /// connected together with its own edges, as a spanning tree over the
    /// block's components.
    #[allow(clippy::type_complexity)]
    fn connections(
        &self,
        per_block: &[(Vec<Vec<Vertex>>, Vec<(Vertex, Vertex)>)],
        b: usize,
        chosen: &mut Vec<(Vertex, Vertex)>,
        visit: &mut dyn FnMut(&[(Vertex, Vertex)], &mut Search) -> Result<bool>,
        search: &mut Search,
    ) -> Result<bool> {
        if b == per_block.len() {
            search.tick()?;
            return visit(chosen, search);
        }
        let (comps, pairs) = &per_block[b];
        let comp_of = |v: Vertex| comps.iter().position(|c| c.contains(&v)).expect("pair lies in the block");
        let mut union: Vec<usize> = (0..comps.len()).collect();
        self.trees(
            pairs,
            0,
            comps.len() - 1,
            &comp_of,
            &mut union,
            chosen,
            &mut |chosen, search| self.connections(per_block, b + 1, chosen, visit, search),
            search,
        )
    }

    #[allow(clippy::too_many_arguments)]
    fn trees(
        &self,
        pairs: &[(Vertex, Vertex)],
        from: usize,
        missing: usize,
        comp_of: &dyn Fn(Vertex) -> usize,
        union: &mut Vec<usize>,
        chosen: &mut Vec<(Vertex, Vertex)>,
        next: &mut dyn FnMut(&mut Vec<(Vertex, Vertex)>, &mut Search) -> Result<bool>,
        search: &mut Search,
    ) -> Result<bool> {
        if missing == 0 {
            return next(chosen, search);
        }
        fn find(union: &[usize], mut x: usize) -> usize {
            while union[x] != x {
                x = union[x];
            }
            x
        }
        for i in from..pairs.len() {
            let (u, v) = pairs[i];
            let (ru, rv) = (find(union, comp_of(u)), find(union, comp_of(v)));
            if ru == rv {
                continue;
            }
            let saved = union.clone();
            union[ru] = rv;
            chosen.push((u, v));
            let done = self.trees(pairs, i + 1, missing - 1, comp_of, union, chosen, next, search)?;
            chosen.pop();
            *union = saved;
            if done {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// The program without connection rows, plus `(signature, variable)` for
    /// every configuration count.
    fn program(&self) -> (IntegerProgram, Vec<(Signature, usize)>) {
        let b = self.instance.bounds();
        let q = self.blocks.len();
        let mut ip = IntegerProgram::new();
        let mut counts: Vec<(Signature, usize)> = Vec::new();
        let mut rows_by_block: Vec<Vec<(usize, i64)>> = vec![Vec::new(); q];
        let mut large_row = Vec::new();
        let mut inner_row = Vec::new();
        for (t, kind) in self.kinds.iter().enumerate() {
            let m = kind.pieces.len() as i64;
            let mut local = Vec::new();
            for (c, sig) in kind.signatures.iter().enumerate() {
                let y = ip.add_variable(format!("y{t}_{c}"), 0, m);
                local.push((y, 1));
                for (i, &s) in sig.0.iter().enumerate() {
                    if s > 0 {
                        rows_by_block[i].push((y, s as i64));
                    }
                }
                if sig.2 > 0 {
                    large_row.push((y, sig.2 as i64));
                }
                if sig.1 + sig.2 > 0 {
                    inner_row.push((y, (sig.1 + sig.2) as i64));
                }
                counts.push((sig.clone(), y));
            }
            ip.add_constraint(format!("piece{t}"), local, Relation::Eq, m);
        }
        let slack_top = i64::from(b.is_split());
        for (i, mut row) in rows_by_block.into_iter().enumerate() {
            let x = ip.add_variable(format!("x{i}"), 0, slack_top);
            large_row.push((x, 1));
            row.push((x, -1));
            ip.add_constraint(format!("block{i}"), row, Relation::Eq, b.small as i64 - self.blocks[i].len() as i64);
        }
        ip.add_constraint("large", large_row, Relation::Eq, b.num_large as i64);
        ip.add_constraint("inner", inner_row, Relation::Eq, (b.parts - q) as i64);
        (ip, counts)
    }

    fn decode(&self, counts: &[(Signature, usize)], values: &[i64]) -> Result<Partition> {
        let q = self.blocks.len();
        let mut parts: Vec<Vec<Vertex>> = self.blocks.to_vec();
        let mut offset = 0;
        for kind in &self.kinds {
            let mut pieces = kind.pieces.iter();
            for sig in &kind.signatures {
                let var = counts[offset].1;
                offset += 1;
                for _ in 0..values[var] {
                    let p = *pieces
                        .next()
                        .ok_or_else(|| Error::Inconclusive("configuration counts exceed pieces".into()))?;
                    let config = &self.configs[p][sig];
                    let base = parts.len();
                    for (&v, &a) in config.piece.iter().zip(&config.assignment) {
                        if a < q {
                            parts[a].push(v);
                        } else {
                            let idx = base + a - q;
                            if idx >= parts.len() {
                                parts.resize(idx + 1, Vec::new());
                            }
                            parts[idx].push(v);
                        }
                    }
                }
            }
        }
        debug_assert_eq!(
            self.pieces.iter().map(Vec::len).sum::<usize>() + self.blocks.iter().map(Vec::len).sum::<usize>(),
            self.instance.vertex_count()
        );
        Partition::from_parts(self.instance.vertex_count(), &parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Instance;

    fn bounds(n: usize, p: usize) -> SizeBounds {
        SizeBounds::new(n, p).unwrap()
    }

    #[test]
    fn single_vertex_between_two_parts() {
        // Path 0 - 1 - 2 with the middle vertex as the piece.
        let g = Graph::path(3);
        let configs = build_piece_configurations(&g, &[1], &[vec![0], vec![2]], &bounds(6, 2));
        let assignments: Vec<_> = configs.iter().map(|c| c.assignment.clone()).collect();
        assert_eq!(assignments, vec![vec![0], vec![1]]);
    }

    #[test]
    fn edge_piece_needs_a_route_to_each_part() {
        // a = 1 sees part {0}; b = 2 sees nothing outside the piece.
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 3)]).unwrap();
        let configs = build_piece_configurations(&g, &[1, 2], &[vec![0], vec![3]], &bounds(8, 2));
        let assignments: Vec<_> = configs.iter().map(|c| c.assignment.clone()).collect();
        assert_eq!(assignments, vec![vec![0, 0]]);
    }

    #[test]
    fn sizes_add_up() {
        let g = Graph::grid(3, 3);
        let blocks = vec![vec![0], vec![8]];
        let pieces = g.components_avoiding(&[0, 8]);
        for config in build_piece_configurations(&g, &pieces[0], &blocks, &bounds(9, 3)) {
            let inner: usize = config.assignment.iter().filter(|&&a| a >= 2).count();
            assert_eq!(config.sizes.iter().sum::<usize>() + inner, config.piece.len());
        }
    }

    #[test]
    fn connection_through_a_chunk() {
        let g = Graph::path(3);
        let configs = build_piece_configurations(&g, &[1], &[vec![0, 2]], &bounds(3, 1));
        assert_eq!(configs.len(), 1);
        assert_eq!(configs[0].connections, vec![(0, 2)]);
    }

    #[test]
    fn path_through_modulator() {
        let instance = Instance::new(Graph::path(9), 3).unwrap();
        let mut search = Search::new(&Default::default());
        let partition = solve_with_modulator(&instance, &[2, 6], 3, &mut search).unwrap().unwrap();
        assert!(verify_partition(&instance, &partition).unwrap().is_valid());
    }
}

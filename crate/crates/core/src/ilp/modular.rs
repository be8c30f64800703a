//! Modular-width solver.
//!
//! A module `M` meets the rest of a solution in two ways: parts that stay
//! inside `M`, and parts that take some of its vertices together with a
//! common outside neighbour. Since every vertex of `M` sees that neighbour,
//! the second kind may take any vertices at all. So a module is summarised by
//! which numbers of small and large parts it can pack internally. That set is
//! closed under dropping parts, and is stored as its staircase: for each
//! large count `b`, the most small parts packable alongside at least `b`
//! large ones. Series and prime nodes combine children with the
//! type-pattern program, where crossing parts take free vertices from a
//! connected set of children.

use crate::error::{Error, Result};
use crate::graph::{verify_partition, Graph, Instance, Partition, SizeBounds, Vertex};
use crate::search::{Search, SearchLimits};

use super::diversity::connected_subsets;
use super::program::{solve_integer_program_in, IntegerProgram, ProgramOutcome, Relation, Sense};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum ModularNode {
    Leaf(Vertex),
    Parallel(Vec<ModularNode>),
    Series(Vec<ModularNode>),
    Prime { quotient: Graph, children: Vec<ModularNode> },
}

impl ModularNode {
    #[cfg(test)]
    fn vertices(&self) -> Vec<Vertex> {
        match self {
            ModularNode::Leaf(v) => vec![*v],
            ModularNode::Parallel(c) | ModularNode::Series(c) | ModularNode::Prime { children: c, .. } => {
                c.iter().flat_map(ModularNode::vertices).collect()
            }
        }
    }
}

/// Largest prime quotient in the modular decomposition (0 for co-graphs).
pub fn modular_width(graph: &Graph) -> usize {
    fn width(node: &ModularNode) -> usize {
        match node {
            ModularNode::Leaf(_) => 0,
            ModularNode::Parallel(c) | ModularNode::Series(c) => c.iter().map(width).max().unwrap_or(0),
            ModularNode::Prime { children, .. } => children.iter().map(width).max().unwrap_or(0).max(children.len()),
        }
    }
    width(&modular_decomposition(graph))
}

pub(crate) fn modular_decomposition(graph: &Graph) -> ModularNode {
    let n = graph.vertex_count();
    let adj: Vec<Vec<bool>> = (0..n).map(|u| (0..n).map(|v| graph.has_edge(u, v)).collect()).collect();
    decompose(&adj, &(0..n).collect::<Vec<_>>())
}

fn components(adj: &[Vec<bool>], set: &[Vertex], complement: bool) -> Vec<Vec<Vertex>> {
    let mut seen = vec![false; adj.len()];
    let mut out = Vec::new();
    for &s in set {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let u = comp[i];
            i += 1;
            for &w in set {
                if !seen[w] && w != u && adj[u][w] != complement {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Smallest module of `G[set]` containing `u` and `v`.
fn closure(adj: &[Vec<bool>], set: &[Vertex], u: Vertex, v: Vertex) -> Vec<Vertex> {
    let mut inside = vec![false; adj.len()];
    inside[u] = true;
    inside[v] = true;
    let mut module = vec![u, v];
    loop {
        let splitter =
            set.iter().copied().find(|&x| !inside[x] && module.iter().any(|&m| adj[x][m] != adj[x][module[0]]));
        match splitter {
            Some(x) => {
                inside[x] = true;
                module.push(x);
            }
            None => break,
        }
    }
    module.sort_unstable();
    module
}

fn decompose(adj: &[Vec<bool>], set: &[Vertex]) -> ModularNode {
    if set.len() == 1 {
        return ModularNode::Leaf(set[0]);
    }
    let parts = components(adj, set, false);
    if parts.len() > 1 {
        return ModularNode::Parallel(parts.iter().map(|c| decompose(adj, c)).collect());
    }
    let parts = components(adj, set, true);
    if parts.len() > 1 {
        return ModularNode::Series(parts.iter().map(|c| decompose(adj, c)).collect());
    }
    // Both the graph and its complement are connected, so the maximal proper
    // modules are disjoint; each is the union of the proper pair closures of
    // any of its members.
    let mut module_of = vec![usize::MAX; adj.len()];
    let mut modules: Vec<Vec<Vertex>> = Vec::new();
    for &v in set {
        if module_of[v] != usize::MAX {
            continue;
        }
        let mut module = vec![v];
        for &w in set {
            if w != v && !module.contains(&w) {
                let c = closure(adj, set, v, w);
                if c.len() < set.len() {
                    for x in c {
                        if !module.contains(&x) {
                            module.push(x);
                        }
                    }
                }
            }
        }
        module.sort_unstable();
        for &x in &module {
            module_of[x] = modules.len();
        }
        modules.push(module);
    }
    let k = modules.len();
    let mut edges = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            if adj[modules[i][0]][modules[j][0]] {
                edges.push((i, j));
            }
        }
    }
    let quotient = Graph::from_edges(k, &edges).expect("quotient is simple");
    ModularNode::Prime { quotient, children: modules.iter().map(|m| decompose(adj, m)).collect() }
}

pub fn solve_modular_width(instance: &Instance) -> Result<Option<Partition>> {
    solve_modular_width_in(instance, &mut Search::new(&SearchLimits::default()))
}

pub fn solve_modular_width_in(instance: &Instance, search: &mut Search) -> Result<Option<Partition>> {
    let bounds = instance.bounds();
    let tree = binarize(modular_decomposition(instance.graph()));
    let mut solver = Solver { bounds, num_small: bounds.num_small() as i64, search };
    let root = solver.summarize(&tree)?;
    let (a, b) = (solver.num_small, bounds.num_large);
    if root.stairs[b] < a {
        return Ok(None);
    }
    let mut parts = Vec::new();
    let free = solver.realize(&root, a, b, &mut parts)?;
    debug_assert!(free.is_empty());
    let partition = Partition::from_parts(instance.vertex_count(), &parts)?;
    if !verify_partition(instance, &partition)?.is_valid() {
        return Err(Error::Inconclusive("decoded modular solution failed verification".into()));
    }
    Ok(Some(partition))
}

/// Series and parallel nodes become binary so join programs stay small.
fn binarize(node: ModularNode) -> ModularNode {
    match node {
        ModularNode::Leaf(_) => node,
        ModularNode::Prime { quotient, children } => {
            ModularNode::Prime { quotient, children: children.into_iter().map(binarize).collect() }
        }
        ModularNode::Parallel(children) | ModularNode::Series(children) if children.len() == 1 => {
            binarize(children.into_iter().next().expect("one child"))
        }
        ModularNode::Parallel(children) => fold(children, ModularNode::Parallel),
        ModularNode::Series(children) => fold(children, ModularNode::Series),
    }
}

fn fold(children: Vec<ModularNode>, make: fn(Vec<ModularNode>) -> ModularNode) -> ModularNode {
    let mut iter = children.into_iter().rev().map(binarize);
    let mut acc = iter.next().expect("inner node has children");
    for child in iter {
        acc = make(vec![child, acc]);
    }
    acc
}

/// Summary of a module plus what is needed to rebuild a packing.
struct Summary<'t> {
    node: &'t ModularNode,
    size: i64,
    /// `stairs[b]`: most small parts with at least `b` large ones, or -1.
    stairs: Vec<i64>,
    children: Vec<Summary<'t>>,
    patterns: Vec<Vec<usize>>,
}

struct Solver<'s> {
    bounds: SizeBounds,
    num_small: i64,
    search: &'s mut Search,
}

/// Variable handles of one node program.
struct NodeProgram {
    ip: IntegerProgram,
    /// Per child: `(small-count variable, [(large count, selector)])`.
    picks: Vec<(usize, Vec<(usize, usize)>)>,
    /// Per pattern: copies, large copies, and takes per member child.
    crossing: Vec<(usize, usize, Vec<usize>)>,
    small_total: Vec<(usize, i64)>,
    large_total: Vec<(usize, i64)>,
}

impl<'s> Solver<'s> {
    fn summarize<'t>(&mut self, node: &'t ModularNode) -> Result<Summary<'t>> {
        self.search.tick()?;
        let cap = self.bounds.num_large;
        match node {
            ModularNode::Leaf(_) => {
                let mut stairs = vec![-1; cap + 1];
                stairs[0] = i64::from(self.bounds.small == 1).min(self.num_small);
                Ok(Summary { node, size: 1, stairs, children: Vec::new(), patterns: Vec::new() })
            }
            ModularNode::Parallel(children) => {
                let children = children.iter().map(|c| self.summarize(c)).collect::<Result<Vec<_>>>()?;
                let mut stairs = vec![-1; cap + 1];
                for (b1, &a1) in children[0].stairs.iter().enumerate() {
                    for (b2, &a2) in children[1].stairs.iter().enumerate() {
                        if a1 >= 0 && a2 >= 0 && b1 + b2 <= cap {
                            stairs[b1 + b2] = stairs[b1 + b2].max((a1 + a2).min(self.num_small));
                        }
                    }
                }
                suffix_max(&mut stairs);
                let size = children.iter().map(|c| c.size).sum();
                Ok(Summary { node, size, stairs, children, patterns: Vec::new() })
            }
            ModularNode::Series(children) | ModularNode::Prime { children, .. } => {
                let quotient = match node {
                    ModularNode::Prime { quotient, .. } => quotient.clone(),
                    _ => Graph::complete(children.len()),
                };
                let children = children.iter().map(|c| self.summarize(c)).collect::<Result<Vec<_>>>()?;
                let patterns: Vec<Vec<usize>> = connected_subsets(&quotient)
                    .into_iter()
                    .filter(|h| h.len() >= 2 && h.len() <= self.bounds.large)
                    .collect();
                let size = children.iter().map(|c| c.size).sum();
                let mut summary = Summary { node, size, stairs: vec![-1; cap + 1], children, patterns };
                for b in 0..=cap {
                    let mut program = self.program(&summary);
                    program.ip.add_constraint("large", program.large_total.clone(), Relation::Eq, b as i64);
                    program.ip.set_objective(Sense::Maximize, program.small_total.clone());
                    match solve_integer_program_in(&program.ip, self.search)? {
                        ProgramOutcome::Solved { objective, .. } => {
                            summary.stairs[b] = objective.expect("program has an objective")
                        }
                        // Dropping a large part keeps a packing valid, so no larger count fits either.
                        ProgramOutcome::Infeasible => break,
                    }
                }
                suffix_max(&mut summary.stairs);
                Ok(summary)
            }
        }
    }

    fn program(&self, summary: &Summary<'_>) -> NodeProgram {
        let b = &self.bounds;
        let (sigma, large) = (b.small as i64, b.large as i64);
        let mut ip = IntegerProgram::new();
        let mut small_total = Vec::new();
        let mut large_total = Vec::new();
        let mut picks = Vec::new();
        // usage[i]: terms counting vertices of child i used by packed parts.
        let mut usage: Vec<Vec<(usize, i64)>> = Vec::new();
        for (i, child) in summary.children.iter().enumerate() {
            let top = child.stairs[0].max(0);
            let a = ip.add_variable(format!("a{i}"), 0, top);
            small_total.push((a, 1));
            let mut selectors = Vec::new();
            let mut bound = vec![(a, 1)];
            let mut terms = vec![(a, sigma)];
            for (beta, &most) in child.stairs.iter().enumerate() {
                if most < 0 {
                    continue;
                }
                let z = ip.add_variable(format!("z{i}_{beta}"), 0, 1);
                selectors.push((beta, z));
                bound.push((z, -most));
                large_total.push((z, beta as i64));
                terms.push((z, large * beta as i64));
            }
            ip.add_constraint(format!("pick{i}"), selectors.iter().map(|&(_, z)| (z, 1)).collect(), Relation::Eq, 1);
            ip.add_constraint(format!("stairs{i}"), bound, Relation::Le, 0);
            picks.push((a, selectors));
            usage.push(terms);
        }
        let mut crossing = Vec::new();
        let most_copies = summary.size / sigma.max(1);
        for h in &summary.patterns {
            let label = h.iter().map(|c| c.to_string()).collect::<Vec<_>>().join("_");
            // Every copy takes a vertex from each member child.
            let most = h.iter().map(|&t| summary.children[t].size).min().unwrap_or(0).min(most_copies);
            let copies = ip.add_variable(format!("x_{label}"), 0, most);
            let big = ip.add_variable(format!("y_{label}"), 0, if b.is_split() { most } else { 0 });
            let takes: Vec<usize> =
                h.iter().map(|&t| ip.add_variable(format!("x_{label}^{t}"), 0, summary.children[t].size)).collect();
            let mut size_row: Vec<(usize, i64)> = takes.iter().map(|&v| (v, 1)).collect();
            size_row.push((copies, -sigma));
            size_row.push((big, -1));
            ip.add_constraint(format!("size_{label}"), size_row, Relation::Eq, 0);
            ip.add_constraint(format!("big_{label}"), vec![(big, 1), (copies, -1)], Relation::Le, 0);
            for (&t, &v) in h.iter().zip(&takes) {
                ip.add_constraint(format!("each_{label}^{t}"), vec![(copies, 1), (v, -1)], Relation::Le, 0);
                usage[t].push((v, 1));
            }
            small_total.push((copies, 1));
            small_total.push((big, -1));
            large_total.push((big, 1));
            crossing.push((copies, big, takes));
        }
        for (i, terms) in usage.into_iter().enumerate() {
            ip.add_constraint(format!("room{i}"), terms, Relation::Le, summary.children[i].size);
        }
        ip.add_constraint("small_cap", small_total.clone(), Relation::Le, self.num_small);
        NodeProgram { ip, picks, crossing, small_total, large_total }
    }

    /// Emits `a` small and `b` large parts packed inside the module and
    /// returns the vertices left free.
    fn realize(
        &mut self,
        summary: &Summary<'_>,
        a: i64,
        b: usize,
        parts: &mut Vec<Vec<Vertex>>,
    ) -> Result<Vec<Vertex>> {
        match summary.node {
            ModularNode::Leaf(v) => {
                if a == 1 {
                    parts.push(vec![*v]);
                    Ok(Vec::new())
                } else {
                    Ok(vec![*v])
                }
            }
            ModularNode::Parallel(_) => {
                let (left, right) = (&summary.children[0], &summary.children[1]);
                let b1 = (0..=b)
                    .find(|&b1| {
                        left.stairs[b1] >= 0 && right.stairs[b - b1] >= 0 && left.stairs[b1] + right.stairs[b - b1] >= a
                    })
                    .expect("target lies under the staircase");
                let a1 = a.min(left.stairs[b1]);
                let mut free = self.realize(left, a1, b1, parts)?;
                free.extend(self.realize(right, a - a1, b - b1, parts)?);
                Ok(free)
            }
            ModularNode::Series(_) | ModularNode::Prime { .. } => {
                let mut program = self.program(summary);
                program.ip.add_constraint("large", program.large_total.clone(), Relation::Eq, b as i64);
                program.ip.add_constraint("small", program.small_total.clone(), Relation::Eq, a);
                let values = match solve_integer_program_in(&program.ip, self.search)? {
                    ProgramOutcome::Solved { values, .. } => values,
                    ProgramOutcome::Infeasible => {
                        return Err(Error::Inconclusive("module target under the staircase was infeasible".into()))
                    }
                };
                let mut free: Vec<Vec<Vertex>> = Vec::new();
                for (child, (a_var, selectors)) in summary.children.iter().zip(&program.picks) {
                    let beta = selectors.iter().find(|&&(_, z)| values[z] == 1).expect("one selector is set").0;
                    let mut own = self.realize(child, values[*a_var], beta, parts)?;
                    own.reverse();
                    free.push(own);
                }
                let sigma = self.bounds.small;
                for (h, (copies, big, takes)) in summary.patterns.iter().zip(&program.crossing) {
                    let copies = values[*copies] as usize;
                    if copies == 0 {
                        continue;
                    }
                    let mut own: Vec<Vec<Vertex>> = vec![Vec::new(); copies];
                    let mut pool = Vec::new();
                    for (&t, &var) in h.iter().zip(takes) {
                        for i in 0..values[var] as usize {
                            let v = free[t].pop().expect("child has enough free vertices");
                            if i < copies {
                                own[i].push(v);
                            } else {
                                pool.push(v);
                            }
                        }
                    }
                    let mut pool = pool.into_iter();
                    for (i, part) in own.iter_mut().enumerate() {
                        let target = sigma + usize::from(i < values[*big] as usize);
                        while part.len() < target {
                            part.push(pool.next().expect("pattern size matches its copies"));
                        }
                    }
                    parts.extend(own);
                }
                Ok(free.into_iter().flatten().collect())
            }
        }
    }
}

fn suffix_max(stairs: &mut [i64]) {
    for b in (0..stairs.len().saturating_sub(1)).rev() {
        stairs[b] = stairs[b].max(stairs[b + 1]);
    }
}

//! Co-tree dynamic programme over (uncovered vertices, large parts used).
//!
//! At a join node, parts formed across the two sides only need one vertex on
//! each side, so the bipartite table decides which uncovered counts can be
//! consumed there.

use std::collections::HashMap;

use super::bipartite::{build_bipartite_table, BipartiteTable};
use super::matching::solve_small_parts;
use crate::analyzers::CoTree;
use crate::error::{Error, Result};
use crate::graph::{Instance, Partition, Vertex};
use crate::search::{Search, SearchLimits};

pub fn solve_cograph(instance: &Instance, cotree: &CoTree) -> Result<Option<Partition>> {
    solve_cograph_in(instance, cotree, &mut Search::new(&SearchLimits::default()))
}

#[derive(Clone, Copy, Debug)]
enum Back {
    Leaf,
    Union { a: (usize, usize), b: (usize, usize) },
    Join { a: (usize, usize), b: (usize, usize), k: usize, l: usize, gk: usize },
}

/// `cells[i][g]` for one co-tree node.
struct Table {
    cells: Vec<Vec<Option<Back>>>,
}

impl Table {
    fn new(leaves: usize, cap: usize) -> Self {
        Table { cells: vec![vec![None; cap + 1]; leaves + 1] }
    }

    fn states(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.cells
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().filter(|(_, c)| c.is_some()).map(move |(g, _)| (i, g)))
    }

    fn count(&self) -> u64 {
        self.states().count() as u64
    }
}

struct Node<'t> {
    tree: &'t CoTree,
    table: Table,
    children: Vec<Node<'t>>,
}

pub fn solve_cograph_in(instance: &Instance, cotree: &CoTree, search: &mut Search) -> Result<Option<Partition>> {
    let n = instance.vertex_count();
    let mut leaves = cotree.leaves();
    leaves.sort_unstable();
    if leaves != (0..n).collect::<Vec<_>>() || cotree.evaluate(n) != *instance.graph() {
        return Err(Error::Precondition("co-tree does not evaluate to the instance graph".into()));
    }
    let bounds = instance.bounds();
    if bounds.large <= 2 {
        return solve_small_parts(instance);
    }
    let table = build_bipartite_table(n, bounds)?;
    let mut solver = Solver { table, cap: bounds.num_large, reductions: HashMap::new(), search };
    let root = solver.node(cotree)?;
    if root.table.cells[0][bounds.num_large].is_none() {
        return Ok(None);
    }
    let mut parts = Vec::new();
    let uncovered = solver.realize(&root, 0, bounds.num_large, &mut parts);
    debug_assert!(uncovered.is_empty());
    Ok(Some(Partition::from_parts(n, &parts)?))
}

struct Solver<'s> {
    table: BipartiteTable,
    cap: usize,
    /// For uncovered counts `(i_a, i_b)`: reachable `(remaining, g_k)` with the
    /// `(k, l)` that reach them.
    reductions: HashMap<(usize, usize), Vec<(usize, usize, usize, usize)>>,
    search: &'s mut Search,
}

impl<'s> Solver<'s> {
    fn node<'t>(&mut self, tree: &'t CoTree) -> Result<Node<'t>> {
        self.search.tick()?;
        let node = match tree {
            CoTree::Leaf(_) => {
                let mut table = Table::new(1, self.cap);
                table.cells[1][0] = Some(Back::Leaf);
                Node { tree, table, children: Vec::new() }
            }
            CoTree::Union(a, b) | CoTree::Join(a, b) => {
                let left = self.node(a)?;
                let right = self.node(b)?;
                let table = if matches!(tree, CoTree::Union(..)) {
                    self.union(&left.table, &right.table)
                } else {
                    self.join(&left.table, &right.table)?
                };
                Node { tree, table, children: vec![left, right] }
            }
        };
        self.search.add_states(node.table.count());
        Ok(node)
    }

    fn union(&self, a: &Table, b: &Table) -> Table {
        let leaves = a.cells.len() + b.cells.len() - 2;
        let mut out = Table::new(leaves, self.cap);
        for (ia, ga) in a.states() {
            for (ib, gb) in b.states() {
                if ga + gb <= self.cap {
                    out.cells[ia + ib][ga + gb].get_or_insert(Back::Union { a: (ia, ga), b: (ib, gb) });
                }
            }
        }
        out
    }

    fn join(&mut self, a: &Table, b: &Table) -> Result<Table> {
        let leaves = a.cells.len() + b.cells.len() - 2;
        let mut out = Table::new(leaves, self.cap);
        let a_states: Vec<_> = a.states().collect();
        let b_states: Vec<_> = b.states().collect();
        let cap = self.cap;
        for &(ia, ga) in &a_states {
            for &(ib, gb) in &b_states {
                self.search.tick()?;
                if ga + gb > cap {
                    continue;
                }
                for &(rest, gk, k, l) in self.reductions(ia, ib) {
                    let g = ga + gb + gk;
                    if g <= cap {
                        out.cells[rest][g].get_or_insert(Back::Join { a: (ia, ga), b: (ib, gb), k, l, gk });
                    }
                }
            }
        }
        Ok(out)
    }

    fn reductions(&mut self, ia: usize, ib: usize) -> &[(usize, usize, usize, usize)] {
        let table = &self.table;
        let cap = self.cap;
        self.reductions.entry((ia, ib)).or_insert_with(|| {
            let mut seen = vec![vec![false; cap + 1]; ia + ib + 1];
            let mut out = Vec::new();
            for k in 0..=ia {
                for l in 0..=ib {
                    for gk in 0..=cap {
                        let rest = ia - k + ib - l;
                        if table.get(k, l, gk) && !seen[rest][gk] {
                            seen[rest][gk] = true;
                            out.push((rest, gk, k, l));
                        }
                    }
                }
            }
            out
        })
    }

    /// Emits the finished parts below `node` and returns its uncovered vertices.
    fn realize(&self, node: &Node<'_>, i: usize, g: usize, parts: &mut Vec<Vec<Vertex>>) -> Vec<Vertex> {
        match node.table.cells[i][g].expect("state was reached") {
            Back::Leaf => match node.tree {
                CoTree::Leaf(v) => vec![*v],
                _ => unreachable!("leaf back-pointer on an inner node"),
            },
            Back::Union { a, b } => {
                let mut out = self.realize(&node.children[0], a.0, a.1, parts);
                out.extend(self.realize(&node.children[1], b.0, b.1, parts));
                out
            }
            Back::Join { a, b, k, l, gk } => {
                let mut left = self.realize(&node.children[0], a.0, a.1, parts);
                let mut right = self.realize(&node.children[1], b.0, b.1, parts);
                left.sort_unstable();
                right.sort_unstable();
                let shapes = self.table.decompose(k, l, gk).expect("table entry is feasible");
                let (mut li, mut ri) = (0, 0);
                for (x, y) in shapes {
                    let mut part = left[li..li + x].to_vec();
                    part.extend_from_slice(&right[ri..ri + y]);
                    li += x;
                    ri += y;
                    parts.push(part);
                }
                let mut out = left.split_off(li);
                out.extend(right.split_off(ri));
                out
            }
        }
    }
}

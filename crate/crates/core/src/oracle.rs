//! Exhaustive canonical search, the ground truth for every other solver.
//!
//! Parts are opened at the lowest unassigned vertex and grown through
//! neighbours only, so every unlabelled partition is visited at most once.

use crate::error::Result;
use crate::graph::{Instance, Partition, SizeBounds, Vertex};
use crate::search::{Search, SearchLimits};

pub fn solve_exact(instance: &Instance, limits: &SearchLimits) -> Result<Option<Partition>> {
    solve_exact_in(instance, &mut Search::new(limits))
}

pub fn solve_exact_in(instance: &Instance, search: &mut Search) -> Result<Option<Partition>> {
    let mut walker = Walker::new(instance, search, Mode::First);
    walker.next_part()?;
    Ok(walker.found.map(Partition::new))
}

/// Number of distinct valid partitions, part ids ignored.
pub fn enumerate_all(instance: &Instance, limits: &SearchLimits) -> Result<u64> {
    let mut search = Search::new(limits);
    let mut walker = Walker::new(instance, &mut search, Mode::Count);
    walker.next_part()?;
    Ok(walker.count)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    First,
    Count,
}

const FREE: usize = usize::MAX;

struct Walker<'a> {
    instance: &'a Instance,
    bounds: SizeBounds,
    search: &'a mut Search,
    mode: Mode,
    assignment: Vec<usize>,
    closed: usize,
    large_used: usize,
    excluded: Vec<bool>,
    found: Option<Vec<usize>>,
    count: u64,
}

impl<'a> Walker<'a> {
    fn new(instance: &'a Instance, search: &'a mut Search, mode: Mode) -> Self {
        let n = instance.vertex_count();
        Walker {
            instance,
            bounds: instance.bounds(),
            search,
            mode,
            assignment: vec![FREE; n],
            closed: 0,
            large_used: 0,
            excluded: vec![false; n],
            found: None,
            count: 0,
        }
    }

    fn done(&self) -> bool {
        self.mode == Mode::First && self.found.is_some()
    }

    /// Opens a part at the lowest free vertex, or records a solution.
    fn next_part(&mut self) -> Result<()> {
        self.search.tick()?;
        let Some(seed) = self.assignment.iter().position(|&a| a == FREE) else {
            if self.closed == self.bounds.parts && self.large_used == self.bounds.num_large {
                self.count += 1;
                if self.mode == Mode::First {
                    self.found = Some(self.assignment.clone());
                }
            }
            return Ok(());
        };
        let id = self.closed;
        self.assignment[seed] = id;
        let mut members = vec![seed];
        self.grow(&mut members)?;
        self.assignment[seed] = FREE;
        Ok(())
    }

    fn grow(&mut self, members: &mut Vec<Vertex>) -> Result<()> {
        self.search.tick()?;
        if let Some(is_large) = self.bounds.classify(members.len()) {
            self.try_close(is_large)?;
            if self.done() {
                return Ok(());
            }
        }
        if members.len() >= self.bounds.large {
            return Ok(());
        }
        let frontier = self.frontier(members);
        let id = self.closed;
        for &w in &frontier {
            self.assignment[w] = id;
            members.push(w);
            self.grow(members)?;
            members.pop();
            self.assignment[w] = FREE;
            if self.done() {
                break;
            }
            self.excluded[w] = true;
        }
        for &w in &frontier {
            self.excluded[w] = false;
        }
        Ok(())
    }

    /// Free, non-excluded neighbours of the growing part, ascending.
    fn frontier(&self, members: &[Vertex]) -> Vec<Vertex> {
        let graph = self.instance.graph();
        let mut out: Vec<Vertex> = members
            .iter()
            .flat_map(|&u| graph.neighbors(u).iter().copied())
            .filter(|&w| self.assignment[w] == FREE && !self.excluded[w])
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    fn try_close(&mut self, is_large: bool) -> Result<()> {
        let large_used = self.large_used + usize::from(is_large);
        let closed = self.closed + 1;
        if closed > self.bounds.parts
            || large_used > self.bounds.num_large
            || closed - large_used > self.bounds.num_small()
        {
            return Ok(());
        }
        if !self.remainder_decomposes(closed, large_used) {
            return Ok(());
        }
        // Excluded marks belong to the part being grown; the next part starts clean.
        let saved = std::mem::replace(&mut self.excluded, vec![false; self.assignment.len()]);
        self.closed = closed;
        self.large_used = large_used;
        let result = self.next_part();
        self.closed -= 1;
        self.large_used -= usize::from(is_large);
        self.excluded = saved;
        result
    }

    /// Every free component must split into admissible sizes within the
    /// remaining large budget.
    fn remainder_decomposes(&self, closed: usize, large_used: usize) -> bool {
        let graph = self.instance.graph();
        let large_left = self.bounds.num_large - large_used;
        let parts_left = self.bounds.parts - closed;
        let mut min_parts = 0;
        let mut max_parts = 0;
        let mut min_large = 0;
        for comp in graph.components_where(|v| self.assignment[v] == FREE) {
            let options = self.bounds.decompositions(comp.len(), large_left);
            if options.is_empty() {
                return false;
            }
            min_parts += options.iter().map(|&(s, l)| s + l).min().unwrap_or(0);
            max_parts += options.iter().map(|&(s, l)| s + l).max().unwrap_or(0);
            min_large += options.iter().map(|&(_, l)| l).min().unwrap_or(0);
        }
        min_parts <= parts_left && parts_left <= max_parts && min_large <= large_left
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{verify_partition, Graph};

    fn inst(graph: Graph, p: usize) -> Instance {
        Instance::new(graph, p).unwrap()
    }

    fn solve(graph: Graph, p: usize) -> Option<Partition> {
        let instance = inst(graph, p);
        let found = solve_exact(&instance, &SearchLimits::unlimited()).unwrap();
        if let Some(partition) = &found {
            assert!(verify_partition(&instance, partition).unwrap().is_valid());
        }
        found
    }

    #[test]
    fn k4_splits_in_pairs() {
        let partition = solve(Graph::complete(4), 2).unwrap();
        assert_eq!(partition.sizes(), vec![2, 2]);
    }

    #[test]
    fn star_has_no_two_part_split() {
        assert_eq!(solve(Graph::star(3), 2), None);
    }

    #[test]
    fn path_is_cut_into_consecutive_pairs() {
        let partition = solve(Graph::path(6), 3).unwrap();
        assert_eq!(partition.assignment(), &[0, 0, 1, 1, 2, 2]);
    }

    #[test]
    fn counts() {
        let count = |g: Graph, p| enumerate_all(&inst(g, p), &SearchLimits::unlimited()).unwrap();
        assert_eq!(count(Graph::complete(4), 2), 3);
        assert_eq!(count(Graph::path(4), 2), 1);
        assert_eq!(count(Graph::star(3), 2), 0);
        // C6 into pairs: two perfect matchings of the cycle.
        assert_eq!(count(Graph::cycle(6), 3), 2);
    }

    #[test]
    fn budget_is_reported() {
        let instance = inst(Graph::complete(12), 4);
        let err = enumerate_all(&instance, &SearchLimits::nodes(10)).unwrap_err();
        assert_eq!(err, crate::error::Error::BudgetExceeded);
    }
}

//! Dynamic programme over a nice tree decomposition.
//!
//! A state describes the processed part of the graph below a node: the bag
//! vertices grouped into connected pieces (`labels`, canonical by first
//! occurrence), the number of already forgotten vertices in each piece
//! (`sigma`) and the number of finished large parts (`g`). A piece that
//! loses its last bag vertex can never grow again, so it is finished there.

use indexmap::IndexMap;

use crate::analyzers::{NiceTreeDecomposition, NodeKind};
use crate::error::{Error, Result};
use crate::graph::{Instance, Partition, SizeBounds, Vertex};
use crate::search::{Search, SearchLimits};

pub fn solve_treewidth(instance: &Instance, decomposition: &NiceTreeDecomposition) -> Result<Option<Partition>> {
    solve_treewidth_in(instance, decomposition, &mut Search::new(&SearchLimits::default()))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct State {
    labels: Vec<u8>,
    sigma: Vec<u16>,
    g: u16,
}

#[derive(Clone, Copy, Debug)]
enum Back {
    Leaf,
    Unary(usize),
    Join(usize, usize),
}

type Table = IndexMap<State, Back>;

pub fn solve_treewidth_in(
    instance: &Instance,
    decomposition: &NiceTreeDecomposition,
    search: &mut Search,
) -> Result<Option<Partition>> {
    decomposition.validate(instance.graph())?;
    if decomposition.width() >= u8::MAX as usize {
        return Err(Error::Precondition("decomposition too wide".into()));
    }
    let dp = Dp { instance, bounds: instance.bounds(), td: decomposition };
    let mut tables: Vec<Table> = Vec::with_capacity(decomposition.nodes.len());
    for (x, node) in decomposition.nodes.iter().enumerate() {
        let table = match node.kind {
            NodeKind::Leaf => {
                let mut t = Table::new();
                t.insert(State { labels: vec![], sigma: vec![], g: 0 }, Back::Leaf);
                t
            }
            NodeKind::Introduce(v) => dp.introduce(x, v, &tables[node.children[0]], search)?,
            NodeKind::Forget(v) => dp.forget(x, v, &tables[node.children[0]], search)?,
            NodeKind::Join => dp.join(x, &tables[node.children[0]], &tables[node.children[1]], search)?,
        };
        search.add_states(table.len() as u64);
        tables.push(table);
    }
    let accept = State { labels: vec![], sigma: vec![], g: dp.bounds.num_large as u16 };
    let Some(root_index) = tables[decomposition.root()].get_index_of(&accept) else {
        return Ok(None);
    };
    Ok(Some(dp.realize(&tables, root_index)))
}

struct Dp<'a> {
    instance: &'a Instance,
    bounds: SizeBounds,
    td: &'a NiceTreeDecomposition,
}

/// Relabels by first occurrence; `sigma_of` gives the past count of a raw label.
fn canonical(raw: &[usize], sigma_of: impl Fn(usize) -> u16, g: u16) -> State {
    let mut map: Vec<(usize, u8)> = Vec::new();
    let mut labels = Vec::with_capacity(raw.len());
    let mut sigma = Vec::new();
    for &r in raw {
        let label = match map.iter().find(|(k, _)| *k == r) {
            Some(&(_, l)) => l,
            None => {
                let l = map.len() as u8;
                map.push((r, l));
                sigma.push(sigma_of(r));
                l
            }
        };
        labels.push(label);
    }
    State { labels, sigma, g }
}

fn bag_counts(state: &State) -> Vec<usize> {
    let mut counts = vec![0; state.sigma.len()];
    for &l in &state.labels {
        counts[l as usize] += 1;
    }
    counts
}

impl<'a> Dp<'a> {
    fn bag(&self, x: usize) -> &[Vertex] {
        &self.td.nodes[x].bag
    }

    fn insert(table: &mut Table, state: State, back: Back) {
        table.entry(state).or_insert(back);
    }

    fn introduce(&self, x: usize, v: Vertex, child: &Table, search: &mut Search) -> Result<Table> {
        let bag = self.bag(x);
        let pos_v = bag.binary_search(&v).expect("introduced vertex is in the bag");
        let graph = self.instance.graph();
        let large = self.bounds.large;
        let mut out = Table::new();
        for (ci, (state, _)) in child.iter().enumerate() {
            let counts = bag_counts(state);
            let mut adjacent: Vec<u8> = Vec::new();
            for (i, &u) in bag.iter().enumerate().filter(|&(i, _)| i != pos_v) {
                let label = state.labels[if i < pos_v { i } else { i - 1 }];
                if graph.has_edge(u, v) && !adjacent.contains(&label) {
                    adjacent.push(label);
                }
            }
            for mask in 0u32..1 << adjacent.len() {
                search.tick()?;
                let chosen = |l: u8| adjacent.iter().position(|&a| a == l).is_some_and(|i| mask >> i & 1 == 1);
                let merged = state.sigma.len();
                let mut sigma_new = 0u16;
                let mut size = 1;
                for (i, &a) in adjacent.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        sigma_new += state.sigma[a as usize];
                        size += state.sigma[a as usize] as usize + counts[a as usize];
                    }
                }
                if size > large {
                    continue;
                }
                let mut raw = Vec::with_capacity(bag.len());
                for i in 0..bag.len() {
                    if i == pos_v {
                        raw.push(merged);
                    } else {
                        let l = state.labels[if i < pos_v { i } else { i - 1 }];
                        raw.push(if chosen(l) { merged } else { l as usize });
                    }
                }
                let next = canonical(&raw, |r| if r == merged { sigma_new } else { state.sigma[r] }, state.g);
                Self::insert(&mut out, next, Back::Unary(ci));
            }
        }
        Ok(out)
    }

    fn forget(&self, x: usize, v: Vertex, child: &Table, search: &mut Search) -> Result<Table> {
        let child_bag = &self.td.nodes[self.td.nodes[x].children[0]].bag;
        let pos_v = child_bag.binary_search(&v).expect("forgotten vertex is in the child bag");
        let mut out = Table::new();
        for (ci, (state, _)) in child.iter().enumerate() {
            search.tick()?;
            let label = state.labels[pos_v] as usize;
            let shared = state.labels.iter().filter(|&&l| l as usize == label).count() > 1;
            let mut g = state.g;
            let mut sigma = state.sigma.clone();
            if shared {
                sigma[label] += 1;
            } else {
                match self.bounds.classify(sigma[label] as usize + 1) {
                    None => continue,
                    Some(true) if g as usize == self.bounds.num_large => continue,
                    Some(true) => g += 1,
                    Some(false) => {}
                }
            }
            let raw: Vec<usize> =
                state.labels.iter().enumerate().filter(|&(i, _)| i != pos_v).map(|(_, &l)| l as usize).collect();
            Self::insert(&mut out, canonical(&raw, |r| sigma[r], g), Back::Unary(ci));
        }
        Ok(out)
    }

    fn join(&self, x: usize, left: &Table, right: &Table, search: &mut Search) -> Result<Table> {
        let bag_len = self.bag(x).len();
        let large = self.bounds.large;
        let by_labels = |table: &Table| {
            let mut groups: IndexMap<Vec<u8>, Vec<usize>> = IndexMap::new();
            for (i, state) in table.keys().enumerate() {
                groups.entry(state.labels.clone()).or_default().push(i);
            }
            groups
        };
        let left_groups = by_labels(left);
        let right_groups = by_labels(right);
        let mut out = Table::new();
        for (left_labels, left_ids) in &left_groups {
            let a = left.get_index(left_ids[0]).expect("group is non-empty").0.sigma.len();
            for (right_labels, right_ids) in &right_groups {
                let b = right.get_index(right_ids[0]).expect("group is non-empty").0.sigma.len();
                // Union-find over left labels 0..a and right labels a..a+b.
                let mut parent: Vec<usize> = (0..a + b).collect();
                fn find(parent: &mut [usize], mut i: usize) -> usize {
                    while parent[i] != i {
                        parent[i] = parent[parent[i]];
                        i = parent[i];
                    }
                    i
                }
                for i in 0..bag_len {
                    let (p, q) =
                        (find(&mut parent, left_labels[i] as usize), find(&mut parent, a + right_labels[i] as usize));
                    if p != q {
                        parent[p.max(q)] = p.min(q);
                    }
                }
                let roots: Vec<usize> = (0..a + b).map(|i| find(&mut parent, i)).collect();
                let raw: Vec<usize> = left_labels.iter().map(|&l| roots[l as usize]).collect();
                let mut counts = vec![0usize; a + b];
                for &r in &raw {
                    counts[r] += 1;
                }
                for &li in left_ids {
                    let ls = left.get_index(li).expect("index in range").0;
                    for &ri in right_ids {
                        search.tick()?;
                        let rs = right.get_index(ri).expect("index in range").0;
                        let g = ls.g + rs.g;
                        if g as usize > self.bounds.num_large {
                            continue;
                        }
                        let mut sigma = vec![0u16; a + b];
                        for (l, &s) in ls.sigma.iter().enumerate() {
                            sigma[roots[l]] += s;
                        }
                        for (r, &s) in rs.sigma.iter().enumerate() {
                            sigma[roots[a + r]] += s;
                        }
                        if raw.iter().any(|&r| sigma[r] as usize + counts[r] > large) {
                            continue;
                        }
                        Self::insert(&mut out, canonical(&raw, |r| sigma[r], g), Back::Join(li, ri));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Walks back-pointers from the root, naming parts as they are finished.
    fn realize(&self, tables: &[Table], root_index: usize) -> Partition {
        let n = self.instance.vertex_count();
        let mut assignment = vec![usize::MAX; n];
        let mut next_id = 0;
        let mut stack: Vec<(usize, usize, Vec<usize>)> = vec![(self.td.root(), root_index, Vec::new())];
        while let Some((x, index, names)) = stack.pop() {
            let node = &self.td.nodes[x];
            let (state, back) = tables[x].get_index(index).expect("back-pointer in range");
            let parent_name = |u: Vertex| -> Option<usize> {
                node.bag.binary_search(&u).ok().map(|i| names[state.labels[i] as usize])
            };
            let mut child_names = |child: usize, child_state: &State| -> Vec<usize> {
                let child_bag = &self.td.nodes[child].bag;
                (0..child_state.sigma.len())
                    .map(|l| {
                        child_bag
                            .iter()
                            .zip(&child_state.labels)
                            .filter(|&(_, &cl)| cl as usize == l)
                            .find_map(|(&u, _)| parent_name(u))
                            .unwrap_or_else(|| {
                                next_id += 1;
                                next_id - 1
                            })
                    })
                    .collect()
            };
            match *back {
                Back::Leaf => {}
                Back::Unary(ci) => {
                    let child = node.children[0];
                    let child_state = tables[child].get_index(ci).expect("back-pointer in range").0;
                    let names_below = child_names(child, child_state);
                    if let NodeKind::Forget(v) = node.kind {
                        let pos = self.td.nodes[child].bag.binary_search(&v).expect("forgotten vertex in child bag");
                        assignment[v] = names_below[child_state.labels[pos] as usize];
                    }
                    stack.push((child, ci, names_below));
                }
                Back::Join(li, ri) => {
                    for (child, ci) in [(node.children[0], li), (node.children[1], ri)] {
                        let child_state = tables[child].get_index(ci).expect("back-pointer in range").0;
                        let names_below = child_names(child, child_state);
                        stack.push((child, ci, names_below));
                    }
                }
            }
        }
        Partition::new(assignment).canonical()
    }
}

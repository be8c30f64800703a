//! Neighbourhood-diversity solver: count how many parts realise each
//! connected pattern of twin classes and how many vertices of each class
//! they take.

use crate::analyzers::{ClassKind, TypePartition};
use crate::error::{Error, Result};
use crate::graph::{verify_partition, Graph, Instance, Partition, Vertex};
use crate::search::{Search, SearchLimits};

use super::program::{solve_integer_program_in, IntegerProgram, ProgramOutcome, Relation};

/// Every vertex set of `graph` inducing a connected subgraph, each sorted,
/// listed in lexicographic order.
pub(crate) fn connected_subsets(graph: &Graph) -> Vec<Vec<Vertex>> {
    // Each set is grown from its minimum vertex; a vertex may join only
    // through the first set member that reaches it, so nothing repeats.
    fn grow(graph: &Graph, root: Vertex, set: &mut Vec<Vertex>, mut ext: Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) {
        let mut sorted = set.clone();
        sorted.sort_unstable();
        out.push(sorted);
        while let Some(w) = ext.pop() {
            let mut next = ext.clone();
            for &u in graph.neighbors(w) {
                let seen = set.contains(&u) || set.iter().any(|&s| graph.has_edge(s, u));
                if u > root && !seen && !next.contains(&u) {
                    next.push(u);
                }
            }
            set.push(w);
            grow(graph, root, set, next, out);
            set.pop();
        }
    }

    let mut out = Vec::new();
    for root in graph.vertices() {
        let ext: Vec<Vertex> = graph.neighbors(root).iter().copied().filter(|&x| x > root).collect();
        grow(graph, root, &mut vec![root], ext, &mut out);
    }
    out.sort();
    out
}

/// Class sets that induce connected subgraphs of the type graph.
pub fn enumerate_connected_type_subgraphs(types: &TypePartition) -> Vec<Vec<usize>> {
    connected_subsets(&types.type_graph)
}

pub fn solve_neighbourhood_diversity(instance: &Instance, types: &TypePartition) -> Result<Option<Partition>> {
    solve_neighbourhood_diversity_in(instance, types, &mut Search::new(&SearchLimits::default()))
}

struct Pattern {
    classes: Vec<usize>,
    copies: usize,
    /// Per class in `classes`, the variable counting its vertices.
    takes: Vec<usize>,
}

pub fn solve_neighbourhood_diversity_in(
    instance: &Instance,
    types: &TypePartition,
    search: &mut Search,
) -> Result<Option<Partition>> {
    let graph = instance.graph();
    if !types.matches(graph) {
        return Err(Error::Precondition("type partition does not match the graph".into()));
    }
    let b = instance.bounds();
    let (sigma, xi) = (b.small as i64, i64::from(b.is_split()));
    let sizes: Vec<i64> = types.classes.iter().map(|c| c.len() as i64).collect();
    let mut ip = IntegerProgram::new();
    let mut patterns = Vec::new();
    for classes in enumerate_connected_type_subgraphs(types) {
        search.tick()?;
        if classes.len() > b.large {
            continue;
        }
        let label = classes.iter().map(|c| c.to_string()).collect::<Vec<_>>().join("_");
        let cap = classes.iter().map(|&t| sizes[t]).min().unwrap_or(0).min(b.parts as i64);
        let copies = ip.add_variable(format!("x_{label}"), 0, cap);
        let takes: Vec<usize> =
            classes.iter().map(|&t| ip.add_variable(format!("x_{label}^{t}"), 0, sizes[t])).collect();
        let mut total: Vec<(usize, i64)> = takes.iter().map(|&v| (v, 1)).collect();
        total.push((copies, -sigma));
        ip.add_constraint(format!("lo_{label}"), total.clone(), Relation::Ge, 0);
        total.last_mut().expect("copies term").1 = -(sigma + xi);
        ip.add_constraint(format!("hi_{label}"), total, Relation::Le, 0);
        for (&t, &v) in classes.iter().zip(&takes) {
            ip.add_constraint(format!("each_{label}^{t}"), vec![(copies, 1), (v, -1)], Relation::Le, 0);
        }
        if classes.len() == 1 && types.kinds[classes[0]] == ClassKind::Independent {
            // Two vertices of an independent class alone are not connected.
            ip.add_constraint(format!("single_{label}"), vec![(takes[0], 1), (copies, -1)], Relation::Le, 0);
        }
        patterns.push(Pattern { classes, copies, takes });
    }
    for (t, &size) in sizes.iter().enumerate() {
        let terms: Vec<(usize, i64)> = patterns
            .iter()
            .filter_map(|pat| pat.classes.iter().position(|&c| c == t).map(|i| (pat.takes[i], 1)))
            .collect();
        ip.add_constraint(format!("cover_{t}"), terms, Relation::Eq, size);
    }
    ip.add_constraint("parts", patterns.iter().map(|pat| (pat.copies, 1)).collect(), Relation::Eq, b.parts as i64);
    let values = match solve_integer_program_in(&ip, search)? {
        ProgramOutcome::Infeasible => return Ok(None),
        ProgramOutcome::Solved { values, .. } => values,
    };
    let partition = realize(instance, types, &patterns, &values)?;
    if !verify_partition(instance, &partition)?.is_valid() {
        return Err(Error::Inconclusive("decoded type-pattern solution failed verification".into()));
    }
    Ok(Some(partition))
}

/// One vertex of every class per copy, then fill copies to the small size,
/// then one leftover each; vertices are taken from classes in ascending order.
fn realize(instance: &Instance, types: &TypePartition, patterns: &[Pattern], values: &[i64]) -> Result<Partition> {
    let small = instance.bounds().small;
    let mut cursor = vec![0usize; types.classes.len()];
    let mut parts: Vec<Vec<Vertex>> = Vec::new();
    for pat in patterns {
        let copies = values[pat.copies] as usize;
        if copies == 0 {
            continue;
        }
        let mut pool: Vec<Vertex> = Vec::new();
        let mut own: Vec<Vec<Vertex>> = vec![Vec::new(); copies];
        for (&t, &var) in pat.classes.iter().zip(&pat.takes) {
            let take = values[var] as usize;
            let class = &types.classes[t][cursor[t]..cursor[t] + take];
            cursor[t] += take;
            for (i, part) in own.iter_mut().enumerate() {
                part.push(class[i]);
            }
            pool.extend_from_slice(&class[copies..]);
        }
        let mut pool = pool.into_iter();
        for part in own.iter_mut() {
            while part.len() < small {
                part.push(pool.next().expect("pattern has at least the small size per copy"));
            }
        }
        for (part, v) in own.iter_mut().zip(pool) {
            part.push(v);
        }
        parts.extend(own);
    }
    Partition::from_parts(instance.vertex_count(), &parts)
}

//! Line-oriented instance and solution files.
//!
//! Instance: `c <comment>` lines are ignored, `p ecp <n> <m> <p>` appears once
//! before any edge, followed by `m` lines `e <u> <v>` with 1-indexed vertices.
//! Solution: `s yes` or `s no`; a yes is followed by `a <v> <part>` lines,
//! both 1-indexed.

use std::fmt::Write as _;

use super::{Graph, Instance, Partition};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Yes(Partition),
    No,
}

pub(crate) fn significant_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.first() {
            None | Some(&"c") => None,
            Some(_) => Some((i + 1, tokens)),
        }
    })
}

pub(crate) fn number(line: usize, token: &str, what: &str) -> Result<usize> {
    token.parse().map_err(|_| Error::parse(line, format!("{what}: expected a non-negative integer, got {token:?}")))
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut lines = significant_lines(text);
    let (header_line, header) = lines.next().ok_or_else(|| Error::parse(1, "missing `p ecp` header"))?;
    if header.len() != 5 || header[0] != "p" || header[1] != "ecp" {
        return Err(Error::parse(header_line, "malformed header, expected `p ecp <n> <m> <p>`"));
    }
    let n = number(header_line, header[2], "vertex count")?;
    let m = number(header_line, header[3], "edge count")?;
    let p = number(header_line, header[4], "part count")?;
    if n == 0 {
        return Err(Error::parse(header_line, "graph must have at least one vertex"));
    }
    if p == 0 || p > n {
        return Err(Error::parse(header_line, format!("p = {p} outside 1..={n}")));
    }

    let mut adjacency = vec![Vec::new(); n];
    let mut edges = Vec::with_capacity(m);
    let mut last_line = header_line;
    for (line, tokens) in lines {
        last_line = line;
        match tokens[0] {
            "e" if tokens.len() == 3 => {
                let u = number(line, tokens[1], "endpoint")?;
                let v = number(line, tokens[2], "endpoint")?;
                if u == 0 || v == 0 || u > n || v > n {
                    return Err(Error::parse(line, format!("vertex index out of range 1..={n}")));
                }
                if u == v {
                    return Err(Error::parse(line, "self-loop"));
                }
                let (u, v) = (u - 1, v - 1);
                let list: &mut Vec<usize> = &mut adjacency[u];
                if list.contains(&v) {
                    return Err(Error::parse(line, format!("duplicate edge {} {}", u + 1, v + 1)));
                }
                list.push(v);
                adjacency[v].push(u);
                edges.push((u, v));
            }
            "p" => return Err(Error::parse(line, "header repeated")),
            _ => return Err(Error::parse(line, "malformed directive, expected `e <u> <v>`")),
        }
    }
    if edges.len() != m {
        return Err(Error::parse(last_line, format!("header announces {m} edges, found {}", edges.len())));
    }
    let graph = Graph::from_edges(n, &edges).map_err(|e| Error::parse(last_line, e.to_string()))?;
    if !graph.is_connected() {
        return Err(Error::parse(header_line, "graph is disconnected"));
    }
    Instance::new(graph, p).map_err(|e| Error::parse(header_line, e.to_string()))
}

/// Serializes an instance; `comments` become leading `c` lines.
pub fn serialize_instance(instance: &Instance, comments: &[String]) -> String {
    let graph = instance.graph();
    let mut out = String::new();
    for comment in comments {
        let _ = writeln!(out, "c {comment}");
    }
    let _ = writeln!(out, "p ecp {} {} {}", graph.vertex_count(), graph.edge_count(), instance.parts());
    for (u, v) in graph.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

pub fn serialize_solution(solution: &Solution) -> String {
    match solution {
        Solution::No => "s no\n".to_string(),
        Solution::Yes(partition) => {
            let mut out = String::from("s yes\n");
            for (v, &part) in partition.assignment().iter().enumerate() {
                let _ = writeln!(out, "a {} {}", v + 1, part + 1);
            }
            out
        }
    }
}

/// Parses a solution for an `n`-vertex instance.
pub fn parse_solution(text: &str, n: usize) -> Result<Solution> {
    let mut lines = significant_lines(text);
    let (status_line, status) = lines.next().ok_or_else(|| Error::parse(1, "missing `s` line"))?;
    match status.as_slice() {
        ["s", "no"] => return Ok(Solution::No),
        ["s", "yes"] => {}
        _ => return Err(Error::parse(status_line, "expected `s yes` or `s no`")),
    }
    let mut assignment = vec![usize::MAX; n];
    for (line, tokens) in lines {
        if tokens.len() != 3 || tokens[0] != "a" {
            return Err(Error::parse(line, "expected `a <v> <part>`"));
        }
        let v = number(line, tokens[1], "vertex")?;
        let part = number(line, tokens[2], "part")?;
        if v == 0 || v > n {
            return Err(Error::parse(line, format!("vertex index out of range 1..={n}")));
        }
        if part == 0 {
            return Err(Error::parse(line, "parts are 1-indexed"));
        }
        if assignment[v - 1] != usize::MAX {
            return Err(Error::parse(line, format!("vertex {v} assigned twice")));
        }
        assignment[v - 1] = part - 1;
    }
    if let Some(v) = assignment.iter().position(|&a| a == usize::MAX) {
        return Err(Error::parse(status_line, format!("vertex {} has no assignment", v + 1)));
    }
    Ok(Solution::Yes(Partition::new(assignment)))
}

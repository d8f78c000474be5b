//! Edge-list text format and DOT export.
//!
//! Graphs: first line `n m`, then `m` lines `u v`.
//! Bipartite graphs: first line `nI nO m`, then `m` lines `u v` with
//! `u` an input index and `v` an output index.

use super::{BipartiteGraph, Graph};
use crate::error::{Error, Result};

/// Parse the `n m` edge-list format.  Duplicate edges are collapsed;
/// the second component of the result counts them.
pub fn parse_edge_list(text: &str) -> Result<(Graph, usize)> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (lineno, header) =
        lines.next().ok_or_else(|| Error::Parse { line: 1, msg: "empty input".into() })?;
    let head: Vec<&str> = header.split_whitespace().collect();
    if head.len() != 2 {
        return Err(Error::Parse {
            line: lineno + 1,
            msg: format!("expected 'n m' header, got {header:?}"),
        });
    }
    let n: usize = parse_num(head[0], lineno + 1)?;
    let m: usize = parse_num(head[1], lineno + 1)?;
    let mut g = Graph::empty(n);
    let mut dups = 0;
    let mut count = 0;
    for (lineno, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::Parse {
                line: lineno + 1,
                msg: format!("expected 'u v', got {line:?}"),
            });
        }
        let u: usize = parse_num(fields[0], lineno + 1)?;
        let v: usize = parse_num(fields[1], lineno + 1)?;
        if u >= n || v >= n {
            return Err(Error::Parse {
                line: lineno + 1,
                msg: format!("vertex out of range in {line:?} (n = {n})"),
            });
        }
        if u == v {
            return Err(Error::Parse { line: lineno + 1, msg: format!("loop at vertex {u}") });
        }
        if g.has_edge(u, v) {
            dups += 1;
        } else {
            g.adj[u].insert(v);
            g.adj[v].insert(u);
        }
        count += 1;
    }
    if count != m {
        return Err(Error::Parse {
            line: 1,
            msg: format!("header declares {m} edges but {count} found"),
        });
    }
    Ok((g, dups))
}

/// Canonical edge-list text for a graph (edges sorted, `u < v`).
pub fn serialize(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("{} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Parse the `nI nO m` bipartite edge-list format.
pub fn parse_bipartite(text: &str) -> Result<BipartiteGraph> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (lineno, header) =
        lines.next().ok_or_else(|| Error::Parse { line: 1, msg: "empty input".into() })?;
    let head: Vec<&str> = header.split_whitespace().collect();
    if head.len() != 3 {
        return Err(Error::Parse {
            line: lineno + 1,
            msg: format!("expected 'nI nO m' header, got {header:?}"),
        });
    }
    let ni: usize = parse_num(head[0], lineno + 1)?;
    let no: usize = parse_num(head[1], lineno + 1)?;
    let m: usize = parse_num(head[2], lineno + 1)?;
    let mut edges = Vec::with_capacity(m);
    for (lineno, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::Parse {
                line: lineno + 1,
                msg: format!("expected 'u v', got {line:?}"),
            });
        }
        edges.push((parse_num(fields[0], lineno + 1)?, parse_num(fields[1], lineno + 1)?));
    }
    if edges.len() != m {
        return Err(Error::Parse {
            line: 1,
            msg: format!("header declares {m} edges but {} found", edges.len()),
        });
    }
    BipartiteGraph::new(ni, no, &edges)
}

pub fn serialize_bipartite(b: &BipartiteGraph) -> String {
    let edges = b.edges();
    let mut out = format!("{} {} {}\n", b.n_inputs(), b.n_outputs(), edges.len());
    for (u, v) in edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Undirected DOT export with vertex ids as labels.
pub fn to_dot(g: &Graph, name: &str) -> String {
    let mut out = format!("graph {name} {{\n");
    for v in 0..g.n() {
        out.push_str(&format!("  {v};\n"));
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("  {u} -- {v};\n"));
    }
    out.push_str("}\n");
    out
}

fn parse_num(s: &str, line: usize) -> Result<usize> {
    s.parse().map_err(|_| Error::Parse { line, msg: format!("invalid number {s:?}") })
}

//! Core graph types: simple undirected graphs, multigraphs, bipartite
//! graphs and vertex partitions.
//!
//! Vertices are dense indices `0..n`; external labels, when needed,
//! live in side maps owned by callers.  All types are immutable after
//! construction.

mod bipartite;
mod io;

pub use bipartite::BipartiteGraph;
pub use io::{parse_bipartite, parse_edge_list, serialize, serialize_bipartite, to_dot};

use crate::error::{Error, Result};
use std::collections::{BTreeSet, VecDeque};

/// Simple undirected graph: no loops, no multiple edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<BTreeSet<usize>>,
}

impl Graph {
    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Graph { n, adj: vec![BTreeSet::new(); n] }
    }

    /// Build from an edge list.  Duplicate edges collapse silently;
    /// loops and out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::Loop(u));
            }
            g.adj[u].insert(v);
            g.adj[v].insert(u);
        }
        debug_assert!(g.handshake_ok());
        Ok(g)
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in (u + 1)..n {
                g.adj[u].insert(v);
                g.adj[v].insert(u);
            }
        }
        g
    }

    /// Cycle 0-1-...-(n-1)-0; `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).expect("cycle edges are valid")
    }

    /// Path 0-1-...-(n-1).
    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).expect("path edges are valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    /// Edges as sorted `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange { v, n: self.n })
        } else {
            Ok(())
        }
    }

    fn handshake_ok(&self) -> bool {
        self.adj.iter().map(|s| s.len()).sum::<usize>() == 2 * self.edge_count()
    }

    /// The neighbour set of `A`: vertices at distance exactly one, so
    /// disjoint from `A` itself.
    pub fn boundary(&self, a: &BTreeSet<usize>) -> Result<BTreeSet<usize>> {
        let mut out = BTreeSet::new();
        for &v in a {
            self.check_vertex(v)?;
            for &w in &self.adj[v] {
                if !a.contains(&w) {
                    out.insert(w);
                }
            }
        }
        Ok(out)
    }

    /// Crossing edges between `A` and its complement.
    pub fn cut_size(&self, a: &BTreeSet<usize>) -> usize {
        a.iter().map(|&v| self.adj[v].iter().filter(|w| !a.contains(w)).count()).sum()
    }

    pub fn is_k_regular(&self, k: usize) -> bool {
        (0..self.n).all(|v| self.degree(v) == k)
    }

    /// Degree when the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        if self.n == 0 {
            return None;
        }
        let k = self.degree(0);
        self.is_k_regular(k).then_some(k)
    }

    /// BFS distances from `src`; unreachable vertices map to `None`.
    pub fn bfs_distances(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &v in &self.adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Max over pairs of BFS distances; `None` when disconnected.
    pub fn diameter(&self) -> Option<usize> {
        let mut best = 0;
        for src in 0..self.n {
            for d in self.bfs_distances(src) {
                best = best.max(d?);
            }
        }
        Some(best)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.bfs_distances(0).iter().all(|d| d.is_some())
    }

    /// Connected components as sorted vertex lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = VecDeque::from([s]);
            seen[s] = true;
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Subgraph induced by `verts` (relabelled 0.. in the given order),
    /// returning the graph and the old-vertex map.
    pub fn induced(&self, verts: &[usize]) -> (Graph, Vec<usize>) {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in verts.iter().enumerate() {
            index[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &v) in verts.iter().enumerate() {
            for &w in &self.adj[v] {
                if index[w] != usize::MAX && index[w] > i {
                    edges.push((i, index[w]));
                }
            }
        }
        let g = Graph::from_edges(verts.len(), &edges).expect("induced edges valid");
        (g, verts.to_vec())
    }

    /// Edge present in the output iff absent here; no loops either way.
    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if !self.has_edge(u, v) {
                    g.adj[u].insert(v);
                    g.adj[v].insert(u);
                }
            }
        }
        g
    }

    /// Union of the edge sets of two graphs on the same vertex set.
    pub fn union(&self, other: &Graph) -> Result<Graph> {
        if self.n != other.n {
            return Err(Error::Precondition(format!(
                "union needs equal vertex counts, got {} and {}",
                self.n, other.n
            )));
        }
        let mut edges = self.edges();
        edges.extend(other.edges());
        Graph::from_edges(self.n, &edges)
    }

    /// True iff every edge of `sub` is an edge of `self` (on the first
    /// `sub.n()` vertices).
    pub fn contains_subgraph(&self, sub: &Graph) -> bool {
        sub.n <= self.n && sub.edges().iter().all(|&(u, v)| self.has_edge(u, v))
    }

    /// Proper 2-coloring by BFS when one exists.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut color = vec![None; self.n];
        for s in 0..self.n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].unwrap();
                for &v in &self.adj[u] {
                    match color[v] {
                        None => {
                            color[v] = Some(!cu);
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(|c| c.unwrap()).collect())
    }

    /// Relabel vertices: new vertex `i` is old `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut inv = vec![0; self.n];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let edges: Vec<_> = self.edges().iter().map(|&(u, v)| (inv[u], inv[v])).collect();
        Graph::from_edges(self.n, &edges).expect("relabel preserves validity")
    }
}

/// Multigraph: loops and repeated edges permitted, stored as a plain
/// edge multiset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

/// What a multigraph-to-graph collapse removed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CollapseStats {
    pub loops_dropped: usize,
    pub duplicates_dropped: usize,
}

impl Multigraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for &(u, v) in &edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange { v: u.max(v), n });
            }
        }
        Ok(Multigraph { n, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        // A loop contributes 2 to its endpoint.
        self.edges.iter().map(|&(a, b)| (a == v) as usize + (b == v) as usize).sum()
    }

    /// Keep one copy of each edge and drop loops.
    pub fn collapse(&self) -> (Graph, CollapseStats) {
        let mut seen = BTreeSet::new();
        let mut loops = 0;
        let mut dups = 0;
        for &(u, v) in &self.edges {
            if u == v {
                loops += 1;
            } else if !seen.insert((u.min(v), u.max(v))) {
                dups += 1;
            }
        }
        let edges: Vec<_> = seen.into_iter().collect();
        let g = Graph::from_edges(self.n, &edges).expect("collapsed edges valid");
        (g, CollapseStats { loops_dropped: loops, duplicates_dropped: dups })
    }
}

/// Partition of `0..n` into disjoint parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    n: usize,
    part_of: Vec<usize>,
    parts: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(n: usize, parts: Vec<Vec<usize>>) -> Result<Self> {
        let mut part_of = vec![usize::MAX; n];
        for (i, part) in parts.iter().enumerate() {
            if part.is_empty() {
                return Err(Error::InvalidPartition(format!("part {i} is empty")));
            }
            for &v in part {
                if v >= n {
                    return Err(Error::VertexOutOfRange { v, n });
                }
                if part_of[v] != usize::MAX {
                    return Err(Error::InvalidPartition(format!("vertex {v} in two parts")));
                }
                part_of[v] = i;
            }
        }
        if let Some(v) = part_of.iter().position(|&p| p == usize::MAX) {
            return Err(Error::InvalidPartition(format!("vertex {v} uncovered")));
        }
        let parts = parts
            .into_iter()
            .map(|mut p| {
                p.sort_unstable();
                p
            })
            .collect();
        Ok(Partition { n, part_of, parts })
    }

    /// Partition into singletons.
    pub fn singletons(n: usize) -> Self {
        Partition::new(n, (0..n).map(|v| vec![v]).collect()).expect("singletons valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn part_count(&self) -> usize {
        self.parts.len()
    }

    pub fn part_of(&self, v: usize) -> usize {
        self.part_of[v]
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    /// All parts have equal size.
    pub fn is_equitable(&self) -> bool {
        self.parts.windows(2).all(|w| w[0].len() == w[1].len())
    }
}

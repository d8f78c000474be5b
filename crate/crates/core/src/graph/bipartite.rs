//! Two-part graphs: inputs on one side, outputs on the other.

use crate::error::{Error, Result};
use std::collections::BTreeSet;

/// Bipartite graph with `n_inputs` inputs and `n_outputs` outputs.
/// Edges are `(input, output)` pairs, each side indexed from 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    n_inputs: usize,
    n_outputs: usize,
    adj_in: Vec<BTreeSet<usize>>,
    adj_out: Vec<BTreeSet<usize>>,
}

impl BipartiteGraph {
    pub fn new(n_inputs: usize, n_outputs: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut b = BipartiteGraph {
            n_inputs,
            n_outputs,
            adj_in: vec![BTreeSet::new(); n_inputs],
            adj_out: vec![BTreeSet::new(); n_outputs],
        };
        for &(u, v) in edges {
            if u >= n_inputs {
                return Err(Error::VertexOutOfRange { v: u, n: n_inputs });
            }
            if v >= n_outputs {
                return Err(Error::VertexOutOfRange { v, n: n_outputs });
            }
            b.adj_in[u].insert(v);
            b.adj_out[v].insert(u);
        }
        Ok(b)
    }

    /// Complete bipartite graph K_{a,b}.
    pub fn complete(a: usize, b: usize) -> Self {
        let edges: Vec<_> = (0..a).flat_map(|u| (0..b).map(move |v| (u, v))).collect();
        BipartiteGraph::new(a, b, &edges).expect("complete bipartite valid")
    }

    pub fn n_inputs(&self) -> usize {
        self.n_inputs
    }

    pub fn n_outputs(&self) -> usize {
        self.n_outputs
    }

    pub fn edge_count(&self) -> usize {
        self.adj_in.iter().map(|s| s.len()).sum()
    }

    /// Edges as sorted `(input, output)` pairs.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n_inputs {
            for &v in &self.adj_in[u] {
                out.push((u, v));
            }
        }
        out
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj_in[u].contains(&v)
    }

    pub fn input_neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj_in[u].iter().copied()
    }

    pub fn output_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj_out[v].iter().copied()
    }

    pub fn input_degree(&self, u: usize) -> usize {
        self.adj_in[u].len()
    }

    pub fn output_degree(&self, v: usize) -> usize {
        self.adj_out[v].len()
    }

    /// Output-side neighbour set of an input subset.
    pub fn boundary_of_inputs(&self, a: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for &u in a {
            out.extend(self.adj_in[u].iter().copied());
        }
        out
    }

    /// Input-side neighbour set of an output subset.
    pub fn boundary_of_outputs(&self, a: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for &v in a {
            out.extend(self.adj_out[v].iter().copied());
        }
        out
    }

    /// Every input and output has degree exactly `k`.
    pub fn is_k_regular(&self, k: usize) -> bool {
        self.adj_in.iter().all(|s| s.len() == k) && self.adj_out.iter().all(|s| s.len() == k)
    }

    /// Degree when regular on both sides.
    pub fn regular_degree(&self) -> Option<usize> {
        if self.n_inputs == 0 {
            return None;
        }
        let k = self.adj_in[0].len();
        self.is_k_regular(k).then_some(k)
    }

    /// Mirror image: inputs and outputs swapped.
    pub fn transpose(&self) -> BipartiteGraph {
        let edges: Vec<_> = self.edges().iter().map(|&(u, v)| (v, u)).collect();
        BipartiteGraph::new(self.n_outputs, self.n_inputs, &edges).expect("transpose valid")
    }
}

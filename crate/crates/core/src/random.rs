//! Seeded random generation of graphs and permutations.
//!
//! Everything takes an explicit RNG; the only constructor is
//! [`seeded_rng`], so runs are reproducible by construction.

use crate::graph::{BipartiteGraph, Graph};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The named generator used across the crate: ChaCha8 keyed by a
/// 64-bit seed.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform permutation of 0..n by Fisher-Yates.
pub fn random_permutation(n: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Random graph with every degree at most `k`: candidate edges in
/// random order, added while both endpoints have room.
pub fn bounded_degree_graph(n: usize, k: usize, rng: &mut impl Rng) -> Graph {
    let mut candidates: Vec<(usize, usize)> =
        (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect();
    candidates.shuffle(rng);
    let mut deg = vec![0usize; n];
    let mut edges = Vec::new();
    for (u, v) in candidates {
        if deg[u] < k && deg[v] < k && rng.gen_bool(0.8) {
            deg[u] += 1;
            deg[v] += 1;
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges).expect("bounded-degree edges valid")
}

/// Uniform-ish k-regular graph by the pairing model with rejection:
/// shuffle nk stubs, pair them up, retry on loops or repeats.
/// Requires nk even and k < n.
pub fn regular_graph(n: usize, k: usize, rng: &mut impl Rng) -> Graph {
    assert!(n * k % 2 == 0 && k < n, "need nk even and k < n");
    'retry: loop {
        let mut stubs: Vec<usize> = (0..n * k).map(|i| i / k).collect();
        stubs.shuffle(rng);
        let mut seen = std::collections::BTreeSet::new();
        let mut edges = Vec::with_capacity(n * k / 2);
        for pair in stubs.chunks(2) {
            let (u, v) = (pair[0], pair[1]);
            if u == v || !seen.insert((u.min(v), u.max(v))) {
                continue 'retry;
            }
            edges.push((u, v));
        }
        return Graph::from_edges(n, &edges).expect("pairing edges valid");
    }
}

/// Connected k-regular graph, regenerating until connected.
pub fn connected_regular_graph(n: usize, k: usize, rng: &mut impl Rng) -> Graph {
    loop {
        let g = regular_graph(n, k, rng);
        if g.is_connected() {
            return g;
        }
    }
}

/// Erdos-Renyi-style graph, resampled until connected.
pub fn connected_graph(n: usize, edge_prob: f64, rng: &mut impl Rng) -> Graph {
    loop {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.gen_bool(edge_prob) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edges(n, &edges).expect("random edges valid");
        if g.is_connected() {
            return g;
        }
    }
}

/// k-regular bipartite graph as a union of k permutations, resampled
/// until no two permutations collide anywhere (so the union is simple).
pub fn regular_bipartite_graph(n: usize, k: usize, rng: &mut impl Rng) -> BipartiteGraph {
    assert!(k <= n);
    loop {
        let perms: Vec<Vec<usize>> = (0..k).map(|_| random_permutation(n, rng)).collect();
        let latin = (0..n).all(|j| {
            let col: std::collections::BTreeSet<_> = perms.iter().map(|p| p[j]).collect();
            col.len() == k
        });
        if !latin {
            continue;
        }
        let edges: Vec<(usize, usize)> =
            perms.iter().flat_map(|p| p.iter().enumerate().map(|(j, &v)| (j, v))).collect();
        let b = BipartiteGraph::new(n, n, &edges).expect("permutation edges valid");
        debug_assert!(b.is_k_regular(k));
        return b;
    }
}

//! Bipartite matching engines: maximum matching, Hall violator
//! extraction, bigamist matchings and the König edge-coloring
//! decomposition of regular bipartite graphs.

use crate::error::{Error, Result};
use crate::graph::BipartiteGraph;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// A matching: input -> output pairs, no endpoint repeated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    pairs: BTreeMap<usize, usize>,
}

impl Matching {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn output_of(&self, input: usize) -> Option<usize> {
        self.pairs.get(&input).copied()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().map(|(&u, &v)| (u, v))
    }

    pub fn covers_inputs(&self, b: &BipartiteGraph) -> bool {
        self.pairs.len() == b.n_inputs()
    }

    pub fn output_set(&self) -> BTreeSet<usize> {
        self.pairs.values().copied().collect()
    }

    /// Every pair is an edge and no output repeats.
    pub fn is_valid(&self, b: &BipartiteGraph) -> bool {
        let outputs = self.output_set();
        outputs.len() == self.pairs.len() && self.pairs.iter().all(|(&u, &v)| b.has_edge(u, v))
    }
}

/// Maximum-cardinality matching via Hopcroft-Karp.
pub fn maximum_matching(b: &BipartiteGraph) -> Matching {
    let (ni, no) = (b.n_inputs(), b.n_outputs());
    const FREE: usize = usize::MAX;
    let mut mate_in = vec![FREE; ni]; // input -> output
    let mut mate_out = vec![FREE; no]; // output -> input

    loop {
        // BFS layering from unmatched inputs.
        let mut dist = vec![usize::MAX; ni];
        let mut queue = VecDeque::new();
        for u in 0..ni {
            if mate_in[u] == FREE {
                dist[u] = 0;
                queue.push_back(u);
            }
        }
        let mut found_free_output = false;
        while let Some(u) = queue.pop_front() {
            for v in b.input_neighbors(u) {
                match mate_out[v] {
                    FREE => found_free_output = true,
                    w if dist[w] == usize::MAX => {
                        dist[w] = dist[u] + 1;
                        queue.push_back(w);
                    }
                    _ => {}
                }
            }
        }
        if !found_free_output {
            break;
        }
        // Layered DFS augmentation.
        fn augment(
            b: &BipartiteGraph,
            u: usize,
            dist: &mut [usize],
            mate_in: &mut [usize],
            mate_out: &mut [usize],
        ) -> bool {
            const FREE: usize = usize::MAX;
            let du = std::mem::replace(&mut dist[u], usize::MAX);
            for v in b.input_neighbors(u) {
                let w = mate_out[v];
                if w == FREE || (dist[w] == du + 1 && augment(b, w, dist, mate_in, mate_out)) {
                    mate_in[u] = v;
                    mate_out[v] = u;
                    return true;
                }
            }
            false
        }
        let mut progressed = false;
        for u in 0..ni {
            if mate_in[u] == FREE && dist[u] == 0 {
                progressed |= augment(b, u, &mut dist, &mut mate_in, &mut mate_out);
            }
        }
        if !progressed {
            break;
        }
    }

    let pairs =
        mate_in.iter().enumerate().filter(|&(_, &v)| v != FREE).map(|(u, &v)| (u, v)).collect();
    Matching { pairs }
}

/// `None` when some matching covers all inputs; otherwise a Hall
/// violator A with |boundary(A)| < |A|, extracted as the set of inputs
/// reachable by alternating paths from the unmatched inputs.
pub fn hall_violator(b: &BipartiteGraph) -> Option<BTreeSet<usize>> {
    let m = maximum_matching(b);
    if m.covers_inputs(b) {
        return None;
    }
    let mut mate_out = vec![usize::MAX; b.n_outputs()];
    for (u, v) in m.pairs() {
        mate_out[v] = u;
    }
    let mut reach_in: BTreeSet<usize> =
        (0..b.n_inputs()).filter(|&u| m.output_of(u).is_none()).collect();
    let mut queue: VecDeque<usize> = reach_in.iter().copied().collect();
    let mut reach_out = BTreeSet::new();
    while let Some(u) = queue.pop_front() {
        for v in b.input_neighbors(u) {
            if reach_out.insert(v) {
                let w = mate_out[v];
                if w != usize::MAX && reach_in.insert(w) {
                    queue.push_back(w);
                }
            }
        }
    }
    // Every reachable output is matched (else the path would augment),
    // and its mate is reachable, so |boundary| = |A| - #unmatched < |A|.
    debug_assert!(reach_out.len() < reach_in.len());
    Some(reach_in)
}

/// Result of a bigamist matching attempt.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bigamist {
    /// Two matchings covering all inputs with disjoint output sets.
    Found(Matching, Matching),
    /// A set of inputs with |boundary(A)| < 2|A|.
    Violator(BTreeSet<usize>),
}

/// Duplicate every input and match; the two copies yield the two
/// matchings.
pub fn bigamist_matching(b: &BipartiteGraph) -> Bigamist {
    let ni = b.n_inputs();
    // Doubled graph: input 2u is (u,+), 2u+1 is (u,-).
    let mut edges = Vec::with_capacity(2 * b.edge_count());
    for u in 0..ni {
        for v in b.input_neighbors(u) {
            edges.push((2 * u, v));
            edges.push((2 * u + 1, v));
        }
    }
    let doubled = BipartiteGraph::new(2 * ni, b.n_outputs(), &edges).expect("doubled graph valid");
    match hall_violator(&doubled) {
        None => {
            let m = maximum_matching(&doubled);
            let mut plus = BTreeMap::new();
            let mut minus = BTreeMap::new();
            for (u, v) in m.pairs() {
                if u % 2 == 0 {
                    plus.insert(u / 2, v);
                } else {
                    minus.insert(u / 2, v);
                }
            }
            Bigamist::Found(Matching { pairs: plus }, Matching { pairs: minus })
        }
        Some(doubled_violator) => {
            let projected: BTreeSet<usize> = doubled_violator.iter().map(|&u| u / 2).collect();
            // boundary(projected) = boundary(doubled set) < |doubled set| <= 2|projected|
            Bigamist::Violator(projected)
        }
    }
}

/// Lexicographically least perfect matching, input by input, by
/// feasibility testing.  `None` when no perfect matching exists.
pub fn lex_min_perfect_matching(b: &BipartiteGraph) -> Option<Matching> {
    if b.n_inputs() != b.n_outputs() || maximum_matching(b).len() != b.n_inputs() {
        return None;
    }
    let ni = b.n_inputs();
    let mut chosen: BTreeMap<usize, usize> = BTreeMap::new();
    let mut used_outputs = BTreeSet::new();
    for u in 0..ni {
        let mut done = false;
        for v in b.input_neighbors(u) {
            if used_outputs.contains(&v) {
                continue;
            }
            // Remaining graph on inputs u+1.. and unused outputs.
            let mut rest = Vec::new();
            for w in (u + 1)..ni {
                for x in b.input_neighbors(w) {
                    if x != v && !used_outputs.contains(&x) {
                        rest.push((w - u - 1, x));
                    }
                }
            }
            let rest_graph =
                BipartiteGraph::new(ni - u - 1, b.n_outputs(), &rest).expect("restriction valid");
            if maximum_matching(&rest_graph).len() == ni - u - 1 {
                chosen.insert(u, v);
                used_outputs.insert(v);
                done = true;
                break;
            }
        }
        if !done {
            return None;
        }
    }
    Some(Matching { pairs: chosen })
}

/// Decompose a k-regular bipartite graph with equal parts into k
/// perfect matchings, returned as permutations: the neighbours of
/// input j are exactly perm_1[j], ..., perm_k[j].
pub fn koenig_decomposition(b: &BipartiteGraph, k: usize) -> Result<Vec<Vec<usize>>> {
    if b.n_inputs() != b.n_outputs() {
        return Err(Error::PartMismatch { n_inputs: b.n_inputs(), n_outputs: b.n_outputs() });
    }
    if !b.is_k_regular(k) {
        let v = (0..b.n_inputs()).find(|&u| b.input_degree(u) != k).unwrap_or(0);
        return Err(Error::NotRegular { k, v, degree: b.input_degree(v) });
    }
    let n = b.n_inputs();
    let mut remaining = b.clone();
    let mut perms = Vec::with_capacity(k);
    for round in 0..k {
        let m = maximum_matching(&remaining);
        if m.len() != n {
            // Regular bipartite graphs always satisfy Hall, so a short
            // matching means the regularity bookkeeping broke.
            return Err(Error::Precondition(format!(
                "round {round}: matching of size {} < {n} in a regular graph",
                m.len()
            )));
        }
        let mut perm = vec![0usize; n];
        for (u, v) in m.pairs() {
            perm[u] = v;
        }
        let edges: Vec<_> = remaining.edges().into_iter().filter(|&(u, v)| perm[u] != v).collect();
        remaining = BipartiteGraph::new(n, n, &edges)?;
        perms.push(perm);
    }
    debug_assert_eq!(remaining.edge_count(), 0);
    Ok(perms)
}

/// Brute-force two-sided expansion: every subset of either side with
/// |A| <= n/2 has at least |A| neighbours.  Part size capped at 24.
pub fn has_two_sided_expansion(b: &BipartiteGraph) -> Result<bool> {
    let n = b.n_inputs();
    if n != b.n_outputs() {
        return Err(Error::PartMismatch { n_inputs: b.n_inputs(), n_outputs: b.n_outputs() });
    }
    if n > 24 {
        return Err(Error::TooLarge { n, max: 24 });
    }
    for side in 0..2 {
        let nbr_mask: Vec<u64> = (0..n)
            .map(|u| {
                let mut m = 0u64;
                if side == 0 {
                    for v in b.input_neighbors(u) {
                        m |= 1 << v;
                    }
                } else {
                    for v in b.output_neighbors(u) {
                        m |= 1 << v;
                    }
                }
                m
            })
            .collect();
        for mask in 1u64..(1 << n) {
            let size = mask.count_ones() as usize;
            if 2 * size > n {
                continue;
            }
            let mut boundary = 0u64;
            let mut bits = mask;
            while bits != 0 {
                let u = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                boundary |= nbr_mask[u];
            }
            if (boundary.count_ones() as usize) < size {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// Inputs 1..=4 (as 0-based 0..4 standing for 1..4), input n joined
    /// to outputs 2n and 2n+1 among 2..=9 (0-based 0..8 for 2..9).
    fn doubling_graph() -> BipartiteGraph {
        // input i (0-based) is "n = i+1", outputs are 2..
        // n -> {2n, 2n+1}; output j (0-based) is "j + 2".
        let mut edges = Vec::new();
        for i in 0..4usize {
            let n = i + 1;
            edges.push((i, 2 * n - 2));
            edges.push((i, 2 * n + 1 - 2));
        }
        BipartiteGraph::new(4, 8, &edges).unwrap()
    }

    #[test]
    fn max_matching_examples() {
        assert_eq!(maximum_matching(&BipartiteGraph::complete(3, 3)).len(), 3);
        assert_eq!(maximum_matching(&doubling_graph()).len(), 4);
        assert_eq!(maximum_matching(&BipartiteGraph::complete(1, 5)).len(), 1);
    }

    #[test]
    fn matching_validity() {
        let b = doubling_graph();
        let m = maximum_matching(&b);
        assert!(m.is_valid(&b));
        assert!(m.covers_inputs(&b));
    }

    #[test]
    fn hall_on_regular_graph() {
        // C4 as a 2-regular bipartite graph.
        let c4 = BipartiteGraph::new(2, 2, &[(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        assert_eq!(hall_violator(&c4), None);
    }

    #[test]
    fn hall_pigeonhole_violator() {
        let b = BipartiteGraph::new(2, 1, &[(0, 0), (1, 0)]).unwrap();
        let a = hall_violator(&b).unwrap();
        assert_eq!(a, [0, 1].into_iter().collect());
    }

    #[test]
    fn doubling_graph_covers_inputs_but_not_outputs() {
        // The n -> {2n, 2n+1} graph: inputs are matched, yet outputs
        // cannot all be covered (twice as many of them).
        let b = doubling_graph();
        assert_eq!(hall_violator(&b), None);
        assert!(maximum_matching(&b).len() < b.n_outputs());
    }

    #[test]
    fn bigamist_on_k24() {
        match bigamist_matching(&BipartiteGraph::complete(2, 4)) {
            Bigamist::Found(p, m) => {
                assert_eq!(p.len(), 2);
                assert_eq!(m.len(), 2);
                assert!(p.output_set().is_disjoint(&m.output_set()));
            }
            Bigamist::Violator(_) => panic!("K24 admits a bigamist matching"),
        }
    }

    #[test]
    fn bigamist_violator_on_k23() {
        match bigamist_matching(&BipartiteGraph::complete(2, 3)) {
            Bigamist::Found(..) => panic!("K23 has only 3 outputs for 2 doubled inputs"),
            Bigamist::Violator(a) => {
                assert_eq!(a, [0, 1].into_iter().collect());
                // |boundary| = 3 < 2|A| = 4
            }
        }
    }

    #[test]
    fn bigamist_single_input() {
        let b = BipartiteGraph::new(1, 2, &[(0, 0), (0, 1)]).unwrap();
        match bigamist_matching(&b) {
            Bigamist::Found(p, m) => {
                let o1 = p.output_of(0).unwrap();
                let o2 = m.output_of(0).unwrap();
                assert_ne!(o1, o2);
            }
            _ => panic!("one input with two neighbours splits"),
        }
    }

    #[test]
    fn koenig_on_c4() {
        let c4 = BipartiteGraph::new(2, 2, &[(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        let perms = koenig_decomposition(&c4, 2).unwrap();
        assert_eq!(perms.len(), 2);
        check_decomposition(&c4, &perms);
    }

    #[test]
    fn koenig_on_k33() {
        let k33 = BipartiteGraph::complete(3, 3);
        let perms = koenig_decomposition(&k33, 3).unwrap();
        assert_eq!(perms.len(), 3);
        check_decomposition(&k33, &perms);
        // The three permutations form a 3x3 latin rectangle: each
        // column {perm_i[j]} has distinct entries.
        for j in 0..3 {
            let col: BTreeSet<_> = perms.iter().map(|p| p[j]).collect();
            assert_eq!(col.len(), 3);
        }
    }

    /// The 3-regular bipartite graph with two parts of 7 vertices from
    /// the bi-expander gluing example.
    pub(crate) fn seven_by_seven() -> BipartiteGraph {
        let edges = [
            (0, 0),
            (0, 3),
            (0, 4),
            (1, 0),
            (1, 1),
            (1, 5),
            (2, 0),
            (2, 2),
            (2, 6),
            (3, 1),
            (3, 3),
            (3, 5),
            (4, 2),
            (4, 4),
            (4, 6),
            (5, 1),
            (5, 3),
            (5, 5),
            (6, 2),
            (6, 4),
            (6, 6),
        ];
        BipartiteGraph::new(7, 7, &edges).unwrap()
    }

    #[test]
    fn koenig_on_seven_by_seven() {
        let b = seven_by_seven();
        assert!(b.is_k_regular(3));
        let perms = koenig_decomposition(&b, 3).unwrap();
        assert_eq!(perms.len(), 3);
        check_decomposition(&b, &perms);
    }

    #[test]
    fn koenig_rejects_irregular() {
        let b = BipartiteGraph::new(2, 2, &[(0, 0), (0, 1), (1, 0)]).unwrap();
        assert!(koenig_decomposition(&b, 2).is_err());
    }

    fn check_decomposition(b: &BipartiteGraph, perms: &[Vec<usize>]) {
        let n = b.n_inputs();
        // Each is a permutation, matchings partition the edge set.
        let mut covered = BTreeSet::new();
        for p in perms {
            let distinct: BTreeSet<_> = p.iter().collect();
            assert_eq!(distinct.len(), n);
            for (j, &v) in p.iter().enumerate() {
                assert!(b.has_edge(j, v));
                assert!(covered.insert((j, v)), "edge covered twice");
            }
        }
        assert_eq!(covered.len(), b.edge_count());
    }

    #[test]
    fn two_sided_expansion_examples() {
        assert!(has_two_sided_expansion(&BipartiteGraph::complete(4, 4)).unwrap());
        let m4 = BipartiteGraph::new(4, 4, &[(0, 0), (1, 1), (2, 2), (3, 3)]).unwrap();
        assert!(has_two_sided_expansion(&m4).unwrap());
        let iso = BipartiteGraph::new(3, 3, &[(0, 0), (1, 1)]).unwrap();
        assert!(!has_two_sided_expansion(&iso).unwrap());
    }

    #[test]
    fn lex_min_matching_is_least() {
        let b = BipartiteGraph::new(2, 2, &[(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        let m = lex_min_perfect_matching(&b).unwrap();
        assert_eq!(m.output_of(0), Some(0));
        assert_eq!(m.output_of(1), Some(1));

        // Forced the other way: input 1 only reaches output 0.
        let b2 = BipartiteGraph::new(2, 2, &[(0, 0), (0, 1), (1, 0)]).unwrap();
        let m2 = lex_min_perfect_matching(&b2).unwrap();
        assert_eq!(m2.output_of(0), Some(1));
        assert_eq!(m2.output_of(1), Some(0));
    }

    #[test]
    fn two_sided_expansion_implies_perfect_matching() {
        // Seeded random bipartite graphs; the comment-match lemma.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(2..=7);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in 0..n {
                    if rng.gen_bool(0.4) {
                        edges.push((u, v));
                    }
                }
            }
            let b = BipartiteGraph::new(n, n, &edges).unwrap();
            if has_two_sided_expansion(&b).unwrap() {
                assert_eq!(maximum_matching(&b).len(), n, "lemma violated on {b:?}");
            }
        }
    }
}

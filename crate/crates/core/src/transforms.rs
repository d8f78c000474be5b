//! Constructive expander transformations: the twin construction from
//! regular graphs to bipartite graphs and its inverse gluing, quotient
//! graphs of partitions, and the wraparound-torus counterexample
//! family with its shear partition.

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Graph, Partition};
use crate::matching::lex_min_perfect_matching;

/// Connect each input to its twin and to the twins of its neighbours.
/// A k-regular input yields a (k+1)-regular bipartite graph on n + n
/// vertices, and the bi-constant of the output is at least the fixed
/// constant of the input.
pub fn fixed_to_bi(g: &Graph) -> Result<BipartiteGraph> {
    let k = g.regular_degree().ok_or_else(|| {
        let v = (0..g.n()).find(|&v| g.degree(v) != g.degree(0)).unwrap_or(0);
        Error::NotRegular { k: g.degree(0), v, degree: g.degree(v) }
    })?;
    let n = g.n();
    let mut edges = Vec::with_capacity(n * (k + 1));
    for v in 0..n {
        edges.push((v, v));
        for w in g.neighbors(v) {
            edges.push((v, w));
        }
    }
    let b = BipartiteGraph::new(n, n, &edges)?;
    debug_assert!(b.is_k_regular(k + 1));
    Ok(b)
}

/// Result of gluing a bipartite graph along a perfect matching.
#[derive(Debug, Clone)]
pub struct GluedGraph {
    pub graph: Graph,
    /// Matched output of each input, i.e. which twin was glued on.
    pub matching: Vec<usize>,
    /// Matched pairs produce loops v-v after gluing; these are dropped.
    pub loops_dropped: usize,
}

/// Glue matched twins of a regular bipartite graph with equal parts.
/// Vertex v of the result stands for input v glued with its matched
/// output; v ~ w iff the bipartite graph has v-w' or w-v' where '
/// denotes the match.  Degrees land in [k-1, 2(k-1)] and the fixed
/// constant of the result is at least the bi-constant of the input.
pub fn bi_to_fixed(b: &BipartiteGraph) -> Result<GluedGraph> {
    if b.n_inputs() != b.n_outputs() {
        return Err(Error::PartMismatch { n_inputs: b.n_inputs(), n_outputs: b.n_outputs() });
    }
    let k = b.regular_degree().ok_or_else(|| {
        let v = (0..b.n_inputs()).find(|&u| b.input_degree(u) != b.input_degree(0)).unwrap_or(0);
        Error::NotRegular { k: b.input_degree(0), v, degree: b.input_degree(v) }
    })?;
    let n = b.n_inputs();
    // Regular bipartite graphs satisfy Hall's condition, so this is
    // only None for k = 0.
    let matching = lex_min_perfect_matching(b)
        .ok_or_else(|| Error::Precondition("no perfect matching (k = 0?)".into()))?;
    let mate: Vec<usize> = (0..n).map(|u| matching.output_of(u).unwrap()).collect();
    let mut owner = vec![0usize; n]; // owner[output] = its input
    for (u, &v) in mate.iter().enumerate() {
        owner[v] = u;
    }
    let mut edges = Vec::new();
    let mut loops = 0;
    for u in 0..n {
        for v in b.input_neighbors(u) {
            let w = owner[v];
            if w == u {
                loops += 1;
            } else {
                edges.push((u, w));
            }
        }
    }
    let graph = Graph::from_edges(n, &edges)?;
    if k >= 1 {
        debug_assert!((0..n).all(|v| {
            let d = graph.degree(v);
            k - 1 <= d && d <= 2 * (k - 1)
        }));
    }
    Ok(GluedGraph { graph, matching: mate, loops_dropped: loops })
}

/// Quotient by a partition: vertices are parts, distinct parts are
/// adjacent iff some edge joins them.  For equitable partitions of
/// expanders the quotient satisfies the expanding inequality with the
/// same constant.
pub fn quotient_graph(g: &Graph, p: &Partition) -> Result<Graph> {
    if p.n() != g.n() {
        return Err(Error::InvalidPartition(format!(
            "partition covers {} vertices, graph has {}",
            p.n(),
            g.n()
        )));
    }
    let mut edges = Vec::new();
    for (u, v) in g.edges() {
        let (pu, pv) = (p.part_of(u), p.part_of(v));
        if pu != pv {
            edges.push((pu, pv));
        }
    }
    Graph::from_edges(p.part_count(), &edges)
}

/// The m x m wraparound grid: 4-regular on m^2 vertices.
/// Vertex (i, j) is index i*m + j.
pub fn torus_graph(m: usize) -> Result<Graph> {
    if m < 3 {
        return Err(Error::Precondition(format!("torus needs m >= 3, got {m}")));
    }
    let idx = |i: usize, j: usize| (i % m) * m + (j % m);
    let mut edges = Vec::new();
    for i in 0..m {
        for j in 0..m {
            edges.push((idx(i, j), idx(i + 1, j)));
            edges.push((idx(i, j), idx(i, j + 1)));
        }
    }
    let g = Graph::from_edges(m * m, &edges)?;
    debug_assert!(g.is_k_regular(4));
    Ok(g)
}

/// The shear partition of the m x m torus: (i, j) goes to part
/// (i + j(j+1)/2) mod m.  Equitable with m parts of m vertices each,
/// and the quotient is the complete graph K_m.
pub fn torus_shear_partition(m: usize) -> Result<Partition> {
    if m < 3 {
        return Err(Error::Precondition(format!("torus needs m >= 3, got {m}")));
    }
    let mut parts = vec![Vec::new(); m];
    for i in 0..m {
        for j in 0..m {
            let part = (i + j * (j + 1) / 2) % m;
            parts[part].push(i * m + j);
        }
    }
    Partition::new(m * m, parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::{bi_expander_constant, expander_constant, fixed_expander_constant};
    use crate::num::Rat;

    #[test]
    fn fixed_to_bi_degrees() {
        let b = fixed_to_bi(&Graph::cycle(4)).unwrap();
        assert!(b.is_k_regular(3));
        assert_eq!(b.n_inputs(), 4);

        let b2 = fixed_to_bi(&Graph::complete(2)).unwrap();
        assert!(b2.is_k_regular(2));
        // K2's twin graph is a 4-cycle.
        assert_eq!(b2.edge_count(), 4);
    }

    #[test]
    fn fixed_to_bi_rejects_irregular() {
        assert!(fixed_to_bi(&Graph::path(3)).is_err());
    }

    #[test]
    fn fixed_to_bi_preserves_constant() {
        for g in [Graph::cycle(6), Graph::complete(4), Graph::complete(5)] {
            let c = fixed_expander_constant(&g).unwrap().constant;
            let b = fixed_to_bi(&g).unwrap();
            let cb = bi_expander_constant(&b).unwrap().constant;
            assert!(cb >= c, "bi constant {cb} below fixed constant {c}");
        }
    }

    #[test]
    fn bi_to_fixed_on_perfect_matching() {
        let pm = BipartiteGraph::new(3, 3, &[(0, 0), (1, 1), (2, 2)]).unwrap();
        let glued = bi_to_fixed(&pm).unwrap();
        assert_eq!(glued.graph.edge_count(), 0);
        assert_eq!(glued.loops_dropped, 3);
    }

    #[test]
    fn bi_to_fixed_on_seven_vertex_example() {
        // 3-regular bipartite on 7 + 7; the glued graph has degrees 2, 3, 4.
        let b = crate::matching::tests::seven_by_seven();
        let glued = bi_to_fixed(&b).unwrap();
        let mut degrees: Vec<_> = (0..7).map(|v| glued.graph.degree(v)).collect();
        degrees.sort_unstable();
        assert!(degrees.iter().all(|&d| (2..=4).contains(&d)));
        assert_eq!(*degrees.first().unwrap(), 2);
        assert_eq!(*degrees.last().unwrap(), 4);
    }

    #[test]
    fn bi_to_fixed_on_k33() {
        let glued = bi_to_fixed(&BipartiteGraph::complete(3, 3)).unwrap();
        assert!((0..3).all(|v| {
            let d = glued.graph.degree(v);
            (2..=4).contains(&d)
        }));
    }

    #[test]
    fn bi_to_fixed_preserves_constant() {
        for g in [Graph::cycle(6), Graph::complete(4)] {
            let b = fixed_to_bi(&g).unwrap();
            let cb = bi_expander_constant(&b).unwrap().constant;
            let glued = bi_to_fixed(&b).unwrap();
            let cf = fixed_expander_constant(&glued.graph).unwrap().constant;
            assert!(cf >= cb, "fixed constant {cf} below bi constant {cb}");
        }
    }

    #[test]
    fn quotient_identity_and_c6() {
        let g = Graph::cycle(6);
        let singles = Partition::singletons(6);
        assert_eq!(quotient_graph(&g, &singles).unwrap(), g);

        // Antipodal pairs of C6 quotient to a triangle.
        let anti = Partition::new(6, vec![vec![0, 3], vec![1, 4], vec![2, 5]]).unwrap();
        assert_eq!(quotient_graph(&g, &anti).unwrap(), Graph::complete(3));
    }

    #[test]
    fn torus_shear_quotient_is_complete() {
        for m in [3usize, 5, 7] {
            let g = torus_graph(m).unwrap();
            let p = torus_shear_partition(m).unwrap();
            assert!(p.is_equitable());
            assert!(p.parts().iter().all(|part| part.len() == m));
            let q = quotient_graph(&g, &p).unwrap();
            assert_eq!(q, Graph::complete(m), "shear quotient of {m}x{m} torus");
        }
        assert!(torus_graph(2).is_err());
    }

    #[test]
    fn equitable_quotient_preserves_expander_constant() {
        // Torus 4x4 (n = 16) with the shear partition.
        let g = torus_graph(4).unwrap();
        let p = torus_shear_partition(4).unwrap();
        let c = expander_constant(&g).unwrap().constant;
        let q = quotient_graph(&g, &p).unwrap();
        let cq = expander_constant(&q).unwrap().constant;
        assert!(cq >= c, "quotient constant {cq} below {c}");

        // C6 with antipodal pairs quotients to K3.
        let c6 = Graph::cycle(6);
        let anti = Partition::new(6, vec![vec![0, 3], vec![1, 4], vec![2, 5]]).unwrap();
        let c_in = expander_constant(&c6).unwrap().constant;
        let c_out = expander_constant(&quotient_graph(&c6, &anti).unwrap()).unwrap().constant;
        assert!(c_out >= c_in);
    }

    #[test]
    fn round_trip_constant_never_drops() {
        for g in [Graph::cycle(6), Graph::cycle(8), Graph::complete(4), Graph::complete(6)] {
            let c = fixed_expander_constant(&g).unwrap().constant;
            let round = bi_to_fixed(&fixed_to_bi(&g).unwrap()).unwrap();
            let c2 = fixed_expander_constant(&round.graph).unwrap().constant;
            assert!(c2 >= c, "round trip dropped {c} to {c2}");
        }
    }

    #[test]
    fn torus_quotient_degree_grows() {
        for m in [3usize, 4, 5, 6] {
            let q = quotient_graph(&torus_graph(m).unwrap(), &torus_shear_partition(m).unwrap())
                .unwrap();
            assert!(q.is_k_regular(m - 1));
        }
    }

    #[test]
    fn glued_graph_never_exceeds_rat_bounds() {
        // Spot check that the matching returned is the lex-least one.
        let b = fixed_to_bi(&Graph::cycle(4)).unwrap();
        let glued = bi_to_fixed(&b).unwrap();
        // Identity matching is available (v- is adjacent to v+) and
        // lex-least picks it.
        assert_eq!(glued.matching, vec![0, 1, 2, 3]);
        assert_eq!(Rat::from_integer(1), Rat::from_integer(1));
    }
}

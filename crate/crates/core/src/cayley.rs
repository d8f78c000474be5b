//! Cayley graphs of finite matrix-group quotients, the SL_n generator
//! pair, the projective-action counterexample on nonzero vectors over
//! F_p, and the random-permutation bipartite model with its
//! latin-rectangle predicate.
//!
//! Vectors are rows and matrices act on the right, so the cyclic-shift
//! generator sends e_i to e_{i+1} and e_n to (-1)^(n-1) e_1.

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Graph};
use crate::num::Rat;
use crate::random::{random_permutation, seeded_rng};
use rand::Rng;
use std::collections::{BTreeSet, HashMap};

/// Square integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub n: usize,
    pub a: Vec<i64>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        let mut a = vec![0; n * n];
        for i in 0..n {
            a[i * n + i] = 1;
        }
        IntMatrix { n, a }
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.a[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.a[i * self.n + j] = v;
    }

    /// Determinant by Laplace expansion; fine for n <= 6.
    pub fn det(&self) -> i64 {
        let n = self.n;
        if n == 1 {
            return self.a[0];
        }
        let mut acc = 0;
        for j in 0..n {
            let head = self.get(0, j);
            if head == 0 {
                continue;
            }
            let mut minor = IntMatrix { n: n - 1, a: Vec::with_capacity((n - 1) * (n - 1)) };
            for i in 1..n {
                for jj in 0..n {
                    if jj != j {
                        minor.a.push(self.get(i, jj));
                    }
                }
            }
            let sign = if j % 2 == 0 { 1 } else { -1 };
            acc += sign * head * minor.det();
        }
        acc
    }

    /// Reduce entries mod m.
    pub fn reduce(&self, m: u64) -> MatMod {
        MatMod { n: self.n, m, a: self.a.iter().map(|&x| x.rem_euclid(m as i64) as u64).collect() }
    }
}

/// Square matrix over Z/mZ, row-major, entries reduced.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatMod {
    pub n: usize,
    pub m: u64,
    pub a: Vec<u64>,
}

impl MatMod {
    pub fn identity(n: usize, m: u64) -> Self {
        let mut a = vec![0; n * n];
        for i in 0..n {
            a[i * n + i] = 1 % m;
        }
        MatMod { n, m, a }
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.a[i * self.n + j]
    }

    pub fn mul(&self, rhs: &MatMod) -> MatMod {
        debug_assert_eq!((self.n, self.m), (rhs.n, rhs.m));
        let n = self.n;
        let mut a = vec![0u64; n * n];
        for i in 0..n {
            for k in 0..n {
                let x = self.get(i, k);
                if x == 0 {
                    continue;
                }
                for j in 0..n {
                    a[i * n + j] = (a[i * n + j] + x * rhs.get(k, j)) % self.m;
                }
            }
        }
        MatMod { n, m: self.m, a }
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &[u64]) -> Vec<u64> {
        let n = self.n;
        (0..n)
            .map(|j| (0..n).map(|i| v[i] * self.get(i, j) % self.m).sum::<u64>() % self.m)
            .collect()
    }
}

/// The SL_n generator pair over the integers: the elementary
/// transvection A = I + E_{12} and the signed cyclic shift B with
/// e_i B = e_{i+1}, e_n B = (-1)^(n-1) e_1.  Returned with inverses,
/// in the order [A, A^-1, B, B^-1].
pub fn sl_generators(n: usize) -> Result<Vec<IntMatrix>> {
    if n < 2 {
        return Err(Error::Precondition(format!("SL_n needs n >= 2, got {n}")));
    }
    let mut a = IntMatrix::identity(n);
    a.set(0, 1, 1);
    let mut a_inv = IntMatrix::identity(n);
    a_inv.set(0, 1, -1);

    let sign = if n % 2 == 0 { -1 } else { 1 };
    let mut b = IntMatrix { n, a: vec![0; n * n] };
    for i in 0..n - 1 {
        b.set(i, i + 1, 1);
    }
    b.set(n - 1, 0, sign);
    let mut b_inv = IntMatrix { n, a: vec![0; n * n] };
    for i in 0..n - 1 {
        b_inv.set(i + 1, i, 1);
    }
    b_inv.set(0, n - 1, sign);

    debug_assert_eq!(a.det(), 1);
    debug_assert_eq!(b.det(), 1);
    Ok(vec![a, a_inv, b, b_inv])
}

/// Cayley graph of the group generated by `generators` mod `modulus`:
/// vertices are the BFS closure of the identity, x ~ x s for s in the
/// symmetric generator set; loops and coincident edges are dropped.
#[derive(Debug, Clone)]
pub struct CayleyGraph {
    pub graph: Graph,
    /// Group element of each vertex.
    pub elements: Vec<MatMod>,
    /// Actual regular degree after collapsing, at most |S|.
    pub degree: usize,
}

impl CayleyGraph {
    pub fn index_of(&self, g: &MatMod) -> Option<usize> {
        self.elements.iter().position(|e| e == g)
    }
}

pub fn cayley_graph(generators: &[MatMod], cap: usize) -> Result<CayleyGraph> {
    if generators.is_empty() {
        return Err(Error::Precondition("empty generator set".into()));
    }
    let (n, m) = (generators[0].n, generators[0].m);
    let identity = MatMod::identity(n, m);
    let mut index: HashMap<MatMod, usize> = HashMap::new();
    let mut elements = vec![identity.clone()];
    index.insert(identity, 0);
    let mut queue = std::collections::VecDeque::from([0usize]);
    let mut edges = Vec::new();
    while let Some(x) = queue.pop_front() {
        for s in generators {
            let y = elements[x].mul(s);
            let yi = match index.get(&y) {
                Some(&yi) => yi,
                None => {
                    if elements.len() >= cap {
                        return Err(Error::CapExceeded(cap));
                    }
                    let yi = elements.len();
                    index.insert(y.clone(), yi);
                    elements.push(y);
                    queue.push_back(yi);
                    yi
                }
            };
            if x != yi {
                edges.push((x, yi));
            }
        }
    }
    let graph = Graph::from_edges(elements.len(), &edges)?;
    let degree = graph.regular_degree().ok_or_else(|| {
        Error::Precondition("Cayley graph came out irregular; generators not symmetric?".into())
    })?;
    Ok(CayleyGraph { graph, elements, degree })
}

/// Cayley graph of SL_n(Z/mZ) on the transvection/shift pair.
pub fn sl_cayley_graph(n: usize, m: u64, cap: usize) -> Result<CayleyGraph> {
    let gens: Vec<MatMod> = sl_generators(n)?.iter().map(|g| g.reduce(m)).collect();
    cayley_graph(&gens, cap)
}

/// Nonzero row vector over F_p with its canonical dense index.
pub fn vector_index(v: &[u64], p: u64) -> usize {
    let mut acc = 0u64;
    for &c in v.iter().rev() {
        acc = acc * p + c;
    }
    (acc - 1) as usize
}

fn index_vector(idx: usize, n: usize, p: u64) -> Vec<u64> {
    let mut acc = idx as u64 + 1;
    let mut v = vec![0u64; n];
    for c in v.iter_mut() {
        *c = acc % p;
        acc /= p;
    }
    v
}

/// Apply the transvection: adds coordinate 1 onto coordinate 2.
fn apply_a(v: &[u64], p: u64, inverse: bool) -> Vec<u64> {
    let mut w = v.to_vec();
    w[1] = if inverse { (w[1] + p - v[0] % p) % p } else { (w[1] + v[0]) % p };
    w
}

/// Apply the signed shift: e_i to e_{i+1}, wrapping with the sign
/// (-1)^(n-1) that keeps the determinant 1.
fn apply_b(v: &[u64], p: u64, inverse: bool) -> Vec<u64> {
    let n = v.len();
    let sign_neg = n % 2 == 0; // (-1)^(n-1) = -1 iff n even
    let mut w = vec![0u64; n];
    if !inverse {
        w[1..n].copy_from_slice(&v[..n - 1]);
        w[0] = if sign_neg { (p - v[n - 1]) % p } else { v[n - 1] };
    } else {
        w[..n - 1].copy_from_slice(&v[1..n]);
        w[n - 1] = if sign_neg { (p - v[0]) % p } else { v[0] };
    }
    w
}

/// The graph on the p^n - 1 nonzero vectors of F_p^n with alpha
/// adjacent to its images under the four generators (loops and
/// coincident edges dropped).  Size capped at 10^5 vertices.
pub fn znp_graph(n: usize, p: u64) -> Result<Graph> {
    if n < 2 || !crate::quaternions::is_prime(p as i64) {
        return Err(Error::Precondition(format!("need n >= 2 and p prime, got n={n}, p={p}")));
    }
    let size = (p as u128).pow(n as u32) - 1;
    if size > 100_000 {
        return Err(Error::TooLarge { n: size as usize, max: 100_000 });
    }
    let size = size as usize;
    let mut edges = Vec::new();
    for idx in 0..size {
        let v = index_vector(idx, n, p);
        for (gen, inv) in [(0, false), (0, true), (1, false), (1, true)] {
            let w = if gen == 0 { apply_a(&v, p, inv) } else { apply_b(&v, p, inv) };
            let widx = vector_index(&w, p);
            if widx != idx {
                edges.push((idx, widx));
            }
        }
    }
    Graph::from_edges(size, &edges)
}

/// The small-boundary witness set: Y = {e_3, ..., e_floor(n/2)} is
/// fixed pointwise by the transvection and moved only at its ends by
/// the shift, so its boundary in the vector graph has at most
/// (10/n) |Y| elements.
#[derive(Debug, Clone)]
pub struct YnWitness {
    /// The basis vectors of Y.
    pub y: Vec<Vec<u64>>,
    /// Its graph boundary, as vectors.
    pub boundary: Vec<Vec<u64>>,
    /// |boundary| / |Y|, exact.
    pub ratio: Rat,
}

pub fn yn_counterexample(n: usize, p: u64) -> Result<YnWitness> {
    if n < 8 {
        return Err(Error::Precondition(format!("witness needs n >= 8, got {n}")));
    }
    if !crate::quaternions::is_prime(p as i64) {
        return Err(Error::Precondition(format!("{p} is not prime")));
    }
    let basis = |i: usize| {
        let mut v = vec![0u64; n];
        v[i] = 1;
        v
    };
    // 1-indexed e_3 .. e_{floor(n/2)}.
    let y: Vec<Vec<u64>> = (2..n / 2).map(basis).collect();
    let y_set: BTreeSet<&Vec<u64>> = y.iter().collect();
    let mut boundary = BTreeSet::new();
    for v in &y {
        // The transvection fixes everything off the first coordinate.
        assert_eq!(apply_a(v, p, false), *v);
        assert_eq!(apply_a(v, p, true), *v);
        for inv in [false, true] {
            let w = apply_b(v, p, inv);
            if !y_set.contains(&w) {
                boundary.insert(w);
            }
        }
    }
    let ratio = Rat::new(boundary.len() as i64, y.len() as i64);
    assert!(ratio <= Rat::new(10, n as i64), "boundary ratio {ratio} exceeds 10/{n}");
    Ok(YnWitness { y, boundary: boundary.into_iter().collect(), ratio })
}

/// A draw of k uniform permutations of 0..n, viewed as a bipartite
/// multigraph joining j to each pi_i(j).
#[derive(Debug, Clone)]
pub struct PermutationDraw {
    pub n: usize,
    pub perms: Vec<Vec<usize>>,
    /// No column of the k x n value matrix repeats, i.e. the
    /// multigraph is simple.
    pub is_latin: bool,
}

impl PermutationDraw {
    /// All edges with multiplicity.
    pub fn multi_edges(&self) -> Vec<(usize, usize)> {
        self.perms.iter().flat_map(|p| p.iter().enumerate().map(|(j, &v)| (j, v))).collect()
    }

    /// Simple bipartite graph after dropping duplicate edges.
    pub fn collapse(&self) -> BipartiteGraph {
        BipartiteGraph::new(self.n, self.n, &self.multi_edges()).expect("edges valid")
    }
}

/// Draw k permutations with the given seed (Fisher-Yates, ChaCha8).
pub fn random_permutation_bigraph(n: usize, k: usize, seed: u64) -> Result<PermutationDraw> {
    if k >= n {
        return Err(Error::Precondition(format!("need k < n, got k={k}, n={n}")));
    }
    let mut rng = seeded_rng(seed);
    draw_permutations(n, k, &mut rng)
}

pub fn draw_permutations(n: usize, k: usize, rng: &mut impl Rng) -> Result<PermutationDraw> {
    let perms: Vec<Vec<usize>> = (0..k).map(|_| random_permutation(n, rng)).collect();
    let is_latin = (0..n).all(|j| {
        let col: BTreeSet<usize> = perms.iter().map(|p| p[j]).collect();
        col.len() == k
    });
    Ok(PermutationDraw { n, perms, is_latin })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::koenig_decomposition;
    use crate::metrics::expander_constant;
    use crate::transforms::quotient_graph;

    #[test]
    fn generator_matrices_at_n2() {
        let gens = sl_generators(2).unwrap();
        assert_eq!(gens[0].a, vec![1, 1, 0, 1]); // A
        assert_eq!(gens[2].a, vec![0, 1, -1, 0]); // B
                                                  // A B = identity checks for the inverses.
        let id = IntMatrix::identity(2);
        let mul = |x: &IntMatrix, y: &IntMatrix| {
            let mut out = IntMatrix { n: 2, a: vec![0; 4] };
            for i in 0..2 {
                for j in 0..2 {
                    out.set(i, j, (0..2).map(|k| x.get(i, k) * y.get(k, j)).sum());
                }
            }
            out
        };
        assert_eq!(mul(&gens[0], &gens[1]), id);
        assert_eq!(mul(&gens[2], &gens[3]), id);
    }

    #[test]
    fn determinants_are_one() {
        for n in 2..=6 {
            for g in sl_generators(n).unwrap() {
                assert_eq!(g.det(), 1, "n = {n}");
            }
        }
    }

    #[test]
    fn sl2_mod_3_has_order_24() {
        let cg = sl_cayley_graph(2, 3, 1000).unwrap();
        assert_eq!(cg.graph.n(), 24);
        assert_eq!(cg.degree, 4);
        assert!(cg.graph.is_connected());
    }

    #[test]
    fn sl2_mod_2_has_order_6() {
        let cg = sl_cayley_graph(2, 2, 1000).unwrap();
        assert_eq!(cg.graph.n(), 6);
        // Mod 2 both generators are involutions, so the four-element
        // set collapses to two and the degree drops with it.
        assert_eq!(cg.degree, 2);
    }

    #[test]
    fn degree_never_exceeds_generator_count() {
        for m in [2u64, 3, 5] {
            let cg = sl_cayley_graph(2, m, 100_000).unwrap();
            assert!(cg.degree <= 4, "degree {} at modulus {m}", cg.degree);
            if m > 2 {
                assert_eq!(cg.degree, 4, "no collapse expected at modulus {m}");
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(sl_cayley_graph(2, 5, 10), Err(Error::CapExceeded(10))));
    }

    #[test]
    fn cyclic_group_gives_cycle() {
        // The unipotent subgroup mod 5 with S = {A, A^-1} is Z/5Z.
        let gens = sl_generators(2).unwrap();
        let mods: Vec<MatMod> = [&gens[0], &gens[1]].iter().map(|g| g.reduce(5)).collect();
        let cg = cayley_graph(&mods, 100).unwrap();
        assert_eq!(cg.graph.n(), 5);
        assert!(cg.graph.is_k_regular(2));
        assert!(cg.graph.is_connected());
        assert_eq!(cg.degree, 2);
    }

    #[test]
    fn znp_small_cases() {
        let g = znp_graph(2, 2).unwrap();
        assert_eq!(g.n(), 3);

        let g = znp_graph(2, 3).unwrap();
        assert_eq!(g.n(), 8);
        assert!(g.max_degree() <= 4);

        let g = znp_graph(6, 2).unwrap();
        assert_eq!(g.n(), 63);
    }

    #[test]
    fn znp_is_the_stabilizer_quotient_at_2_3() {
        // Partition the SL2(3) Cayley graph by the image of e_1 under
        // the right action; the quotient is the vector graph, matched
        // vertex by vertex through the explicit labelling.
        let cg = sl_cayley_graph(2, 3, 1000).unwrap();
        let p = 3u64;
        let part_of: Vec<usize> =
            cg.elements.iter().map(|mat| vector_index(&mat.apply_row(&[1, 0]), p)).collect();
        let part_count = 8;
        let mut parts = vec![Vec::new(); part_count];
        for (v, &pt) in part_of.iter().enumerate() {
            parts[pt].push(v);
        }
        assert!(parts.iter().all(|part| part.len() == 3), "cosets of the stabilizer");
        let partition = crate::graph::Partition::new(24, parts).unwrap();
        let quotient = quotient_graph(&cg.graph, &partition).unwrap();
        let direct = znp_graph(2, 3).unwrap();
        assert_eq!(quotient, direct);

        // Expansion preservation on this instance, per the equitable
        // quotient inequality.
        let c_cayley = expander_constant(&cg.graph).unwrap().constant;
        let c_quot = expander_constant(&quotient).unwrap().constant;
        assert!(c_quot >= c_cayley);
    }

    #[test]
    fn yn_witnesses() {
        let w = yn_counterexample(20, 2).unwrap();
        assert_eq!(w.y.len(), 8);
        assert_eq!(w.boundary.len(), 2);
        assert_eq!(w.ratio, Rat::new(1, 4));
        // Boundary is exactly {e_2, e_11} (1-indexed).
        let e = |i: usize| {
            let mut v = vec![0u64; 20];
            v[i] = 1;
            v
        };
        let expect: BTreeSet<Vec<u64>> = [e(1), e(10)].into_iter().collect();
        assert_eq!(w.boundary.iter().cloned().collect::<BTreeSet<_>>(), expect);

        let w = yn_counterexample(8, 3).unwrap();
        assert_eq!(w.y.len(), 2);
        assert_eq!(w.boundary.len(), 2);
        assert!(w.ratio <= Rat::new(10, 8));

        assert!(yn_counterexample(6, 2).is_err());
    }

    #[test]
    fn yn_boundary_matches_graph_boundary() {
        // At (12, 2) the full graph is small enough to cross-check the
        // direct computation against the generic graph boundary.
        let (n, p) = (12usize, 2u64);
        let w = yn_counterexample(n, p).unwrap();
        let g = znp_graph(n, p).unwrap();
        let y_ids: BTreeSet<usize> = w.y.iter().map(|v| vector_index(v, p)).collect();
        let boundary_ids: BTreeSet<usize> = w.boundary.iter().map(|v| vector_index(v, p)).collect();
        assert_eq!(g.boundary(&y_ids).unwrap(), boundary_ids);
    }

    #[test]
    fn latin_predicate() {
        // Single permutation: always latin.
        let d = random_permutation_bigraph(5, 1, 7).unwrap();
        assert!(d.is_latin);

        // Identical permutations: never latin for k = 2.
        let d =
            PermutationDraw { n: 3, perms: vec![vec![0, 1, 2], vec![0, 1, 2]], is_latin: false };
        let collapsed = d.collapse();
        assert_eq!(collapsed.edge_count(), 3);
        assert_eq!(d.multi_edges().len(), 6);
    }

    #[test]
    fn latin_draw_collapses_to_regular_and_koenig_recovers() {
        let mut rng = seeded_rng(101);
        let mut found = 0;
        while found < 5 {
            let d = draw_permutations(8, 3, &mut rng).unwrap();
            if !d.is_latin {
                continue;
            }
            found += 1;
            let b = d.collapse();
            assert!(b.is_k_regular(3));
            let perms = koenig_decomposition(&b, 3).unwrap();
            // The recovered permutations rebuild exactly the edge set.
            let rebuilt: BTreeSet<(usize, usize)> =
                perms.iter().flat_map(|p| p.iter().enumerate().map(|(j, &v)| (j, v))).collect();
            let original: BTreeSet<(usize, usize)> = d.multi_edges().into_iter().collect();
            assert_eq!(rebuilt, original);
        }
    }

    #[test]
    fn draw_is_deterministic() {
        let a = random_permutation_bigraph(10, 3, 42).unwrap();
        let b = random_permutation_bigraph(10, 3, 42).unwrap();
        assert_eq!(a.perms, b.perms);
    }
}

//! Dense symmetric matrices, edge-incidence matrices and the
//! combinatorial Laplacian, generic over the floating scalar.

use crate::graph::Graph;
use crate::num::Scalar;
use rand::Rng;

/// Dense symmetric matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseSymMatrix<F> {
    order: usize,
    entries: Vec<F>,
}

impl<F: Scalar> DenseSymMatrix<F> {
    pub fn zeros(order: usize) -> Self {
        DenseSymMatrix { order, entries: vec![F::zero(); order * order] }
    }

    pub fn identity(order: usize) -> Self {
        let mut m = Self::zeros(order);
        for i in 0..order {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> F {
        self.entries[i * self.order + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.entries[i * self.order + j] = v;
    }

    /// Symmetric within the given absolute tolerance.
    pub fn is_symmetric(&self, tol: F) -> bool {
        (0..self.order).all(|i| (0..i).all(|j| (self.get(i, j) - self.get(j, i)).abs() <= tol))
    }

    pub fn frobenius_norm(&self) -> F {
        self.entries.iter().map(|&x| x * x).sum::<F>().sqrt()
    }
}

/// Per-edge sign choice: `true` means the edge (u, v) with u < v runs
/// from u to v.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation(pub Vec<bool>);

/// Uniformly random orientation for the graph's edges.
pub fn random_orientation(g: &Graph, rng: &mut impl Rng) -> Orientation {
    Orientation((0..g.edge_count()).map(|_| rng.gen_bool(0.5)).collect())
}

/// Signed edge-vertex incidence matrix d as an |E| x n array of rows;
/// row e has +1 at the head and -1 at the tail of edge e.
pub fn incidence_matrix<F: Scalar>(g: &Graph, orientation: &Orientation) -> Vec<Vec<F>> {
    let edges = g.edges();
    assert_eq!(edges.len(), orientation.0.len());
    let mut d = vec![vec![F::zero(); g.n()]; edges.len()];
    for (e, (&(u, v), &forward)) in edges.iter().zip(&orientation.0).enumerate() {
        let (tail, head) = if forward { (u, v) } else { (v, u) };
        d[e][tail] = -F::one();
        d[e][head] = F::one();
    }
    d
}

/// Combinatorial Laplacian: degree diagonal minus adjacency.  Equals
/// transpose(d) * d for every orientation.
pub fn laplacian<F: Scalar>(g: &Graph) -> DenseSymMatrix<F> {
    let n = g.n();
    let mut m = DenseSymMatrix::zeros(n);
    for v in 0..n {
        m.set(v, v, F::from_usize(g.degree(v)).unwrap());
    }
    for (u, v) in g.edges() {
        m.set(u, v, -F::one());
        m.set(v, u, -F::one());
    }
    m
}

/// transpose(d) * d, for checking orientation independence.
pub fn incidence_gram<F: Scalar>(d: &[Vec<F>], n: usize) -> DenseSymMatrix<F> {
    let mut m = DenseSymMatrix::zeros(n);
    for row in d {
        for i in 0..n {
            if row[i] != F::zero() {
                for j in 0..n {
                    if row[j] != F::zero() {
                        m.set(i, j, m.get(i, j) + row[i] * row[j]);
                    }
                }
            }
        }
    }
    m
}

/// Exact integer Laplacian application: (k I - A) f computed over i64.
pub fn laplacian_apply_exact(g: &Graph, f: &[i64]) -> Vec<i64> {
    (0..g.n())
        .map(|v| g.degree(v) as i64 * f[v] - g.neighbors(v).map(|w| f[w]).sum::<i64>())
        .collect()
}

/// Exact incidence application: (df)(e) = f(head) - f(tail) over i64.
pub fn incidence_apply_exact(g: &Graph, orientation: &Orientation, f: &[i64]) -> Vec<i64> {
    g.edges()
        .iter()
        .zip(&orientation.0)
        .map(|(&(u, v), &forward)| {
            let (tail, head) = if forward { (u, v) } else { (v, u) };
            f[head] - f[tail]
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::Real;
    use crate::random::seeded_rng;

    #[test]
    fn k2_laplacian() {
        let m = laplacian::<Real>(&Graph::complete(2));
        assert_eq!(m.get(0, 0), 1.0);
        assert_eq!(m.get(0, 1), -1.0);
        assert_eq!(m.get(1, 0), -1.0);
        assert_eq!(m.get(1, 1), 1.0);
    }

    #[test]
    fn gram_equals_laplacian_for_any_orientation() {
        let g = Graph::cycle(5);
        let mut rng = seeded_rng(4);
        for _ in 0..10 {
            let o = random_orientation(&g, &mut rng);
            let d = incidence_matrix::<Real>(&g, &o);
            let gram = incidence_gram(&d, g.n());
            assert_eq!(gram, laplacian::<Real>(&g));
        }
    }

    #[test]
    fn laplacian_is_degree_minus_adjacency_on_regular() {
        let g = Graph::cycle(4);
        let m = laplacian::<Real>(&g);
        for i in 0..4 {
            assert_eq!(m.get(i, i), 2.0);
        }
        assert_eq!(m.get(0, 1), -1.0);
        assert_eq!(m.get(0, 2), 0.0);
    }

    #[test]
    fn exact_adjointness() {
        // <f, Lap g> = <df, dg> over the integers.
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)])
            .unwrap();
        let mut rng = seeded_rng(8);
        use rand::Rng;
        for _ in 0..50 {
            let f: Vec<i64> = (0..6).map(|_| rng.gen_range(-9..=9)).collect();
            let h: Vec<i64> = (0..6).map(|_| rng.gen_range(-9..=9)).collect();
            let o = random_orientation(&g, &mut rng);
            let lap_h = laplacian_apply_exact(&g, &h);
            let lhs: i64 = f.iter().zip(&lap_h).map(|(a, b)| a * b).sum();
            let df = incidence_apply_exact(&g, &o, &f);
            let dh = incidence_apply_exact(&g, &o, &h);
            let rhs: i64 = df.iter().zip(&dh).map(|(a, b)| a * b).sum();
            assert_eq!(lhs, rhs);
        }
    }
}

//! Combinatorial Laplacian and incidence calculus, a dense symmetric
//! eigensolver, Markov random-walk operators, exact tree return
//! probabilities and the diameter-based spectral lower bound.
//!
//! The matrix kernel is generic over the floating scalar; the graph
//! entry points below use [`Real`].  Tree walk probabilities are exact
//! big rationals since their convergence checks would drown in
//! floating-point drift.

mod jacobi;
mod matrix;
mod walks;

pub use jacobi::jacobi_eigenvalues;
pub use matrix::{
    incidence_apply_exact, incidence_gram, incidence_matrix, laplacian, laplacian_apply_exact,
    random_orientation, DenseSymMatrix, Orientation,
};
pub use walks::{
    markov_norm_estimate, tree_first_passage_gf, tree_norm, tree_norm_branch_point,
    tree_return_probability,
};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::num::Real;

/// Default absolute off-diagonal Frobenius threshold for the
/// eigensolver at `Real` precision.
pub const EIGEN_TOL: Real = 1e-10;

/// All Laplacian eigenvalues, ascending.
pub fn laplacian_eigenvalues(g: &Graph) -> Vec<Real> {
    jacobi_eigenvalues(&laplacian::<Real>(g), EIGEN_TOL)
}

/// Smallest nonzero Laplacian eigenvalue of a connected graph.
pub fn lambda1(g: &Graph) -> Result<Real> {
    if !g.is_connected() {
        let comp = g.components().into_iter().min_by_key(|c| c.len()).unwrap_or_default();
        return Err(Error::Disconnected(comp));
    }
    if g.n() < 2 {
        return Err(Error::Precondition("lambda1 needs at least 2 vertices".into()));
    }
    Ok(laplacian_eigenvalues(g)[1])
}

/// Norm of the Markov operator A/k restricted to the complement of the
/// (per-part) constants: drop one eigenvalue 1, and one eigenvalue -1
/// when the graph is bipartite, then take the largest modulus left.
pub fn markov_second_norm(g: &Graph) -> Result<Real> {
    let k = g
        .regular_degree()
        .ok_or_else(|| Error::Precondition("Markov norm needs a regular graph".into()))?;
    if !g.is_connected() {
        let comp = g.components().into_iter().min_by_key(|c| c.len()).unwrap_or_default();
        return Err(Error::Disconnected(comp));
    }
    if k == 0 {
        return Err(Error::Precondition("degree zero".into()));
    }
    let n = g.n();
    let mut m = DenseSymMatrix::<Real>::zeros(n);
    for (u, v) in g.edges() {
        let w = 1.0 / k as Real;
        m.set(u, v, w);
        m.set(v, u, w);
    }
    let mut eigs = jacobi_eigenvalues(&m, EIGEN_TOL);
    // Largest eigenvalue is 1 (constants); drop it.
    eigs.pop();
    if g.bipartition().is_some() && !eigs.is_empty() {
        // Smallest is -1: the signed per-part constant.
        eigs.remove(0);
    }
    Ok(eigs.iter().fold(0.0, |acc: Real, &x| acc.max(x.abs())))
}

/// Diameter-based lower bound on the second Markov norm: with
/// r = floor((diam - 2)/2), every k-regular graph satisfies
/// ||N|| >= (tree return probability at time 2r)^(1/2r).
pub fn alon_boppana_lower_bound(g: &Graph) -> Result<Real> {
    let k = g
        .regular_degree()
        .ok_or_else(|| Error::Precondition("bound needs a regular graph".into()))?;
    if k < 2 {
        return Err(Error::Precondition("bound needs k >= 2".into()));
    }
    let diameter =
        g.diameter().ok_or_else(|| Error::Disconnected(g.components().swap_remove(0)))?;
    if diameter < 4 {
        return Err(Error::DiameterTooSmall { diameter, needed: 4 });
    }
    let r = (diameter - 2) / 2;
    let prob = tree_return_probability(k, 2 * r);
    let p = big_rational_to_real(&prob);
    Ok(p.powf(1.0 / (2 * r) as Real))
}

pub(crate) fn big_rational_to_real(q: &crate::num::BigRat) -> Real {
    use num_traits::ToPrimitive;
    q.to_f64().expect("probability fits in f64")
}

//! Cyclic Jacobi eigensolver for dense symmetric matrices.

use super::matrix::DenseSymMatrix;
use crate::num::Scalar;

const MAX_SWEEPS: usize = 100;

/// All eigenvalues, ascending.  Sweeps rotate every off-diagonal pair
/// until the off-diagonal Frobenius norm drops below `tol` (absolute),
/// with a relative floor so denormal-scale matrices still converge.
pub fn jacobi_eigenvalues<F: Scalar>(m: &DenseSymMatrix<F>, tol: F) -> Vec<F> {
    let n = m.order();
    debug_assert!(m.is_symmetric(tol.max(F::from_f64(1e-12).unwrap_or_else(F::epsilon))));
    if n == 0 {
        return Vec::new();
    }
    let mut a = m.clone();
    let scale = a.frobenius_norm();
    let stop = tol.max(scale * F::epsilon() * F::from_usize(n).unwrap());

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) < stop {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                if apq == F::zero() {
                    continue;
                }
                // Classic two-sided rotation annihilating (p, q).
                let theta = (a.get(q, q) - a.get(p, p)) / (F::from_f64(2.0).unwrap() * apq);
                let t = {
                    let sign = if theta >= F::zero() { F::one() } else { -F::one() };
                    sign / (theta.abs() + (theta * theta + F::one()).sqrt())
                };
                let c = F::one() / (t * t + F::one()).sqrt();
                let s = t * c;
                rotate(&mut a, p, q, c, s);
            }
        }
    }

    let mut eigs: Vec<F> = (0..n).map(|i| a.get(i, i)).collect();
    eigs.sort_by(|x, y| x.partial_cmp(y).expect("eigenvalues are finite"));
    eigs
}

fn off_diagonal_norm<F: Scalar>(a: &DenseSymMatrix<F>) -> F {
    let n = a.order();
    let mut acc = F::zero();
    for i in 0..n {
        for j in (i + 1)..n {
            let x = a.get(i, j);
            acc += x * x;
        }
    }
    (acc + acc).sqrt()
}

fn rotate<F: Scalar>(a: &mut DenseSymMatrix<F>, p: usize, q: usize, c: F, s: F) {
    let n = a.order();
    for i in 0..n {
        let aip = a.get(i, p);
        let aiq = a.get(i, q);
        a.set(i, p, c * aip - s * aiq);
        a.set(i, q, s * aip + c * aiq);
    }
    for i in 0..n {
        let api = a.get(p, i);
        let aqi = a.get(q, i);
        a.set(p, i, c * api - s * aqi);
        a.set(q, i, s * api + c * aqi);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::Real;

    fn close(a: &[Real], b: &[Real]) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() < 1e-8, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn identity_spectrum() {
        let eigs = jacobi_eigenvalues(&DenseSymMatrix::<Real>::identity(3), 1e-10);
        close(&eigs, &[1.0, 1.0, 1.0]);
    }

    #[test]
    fn two_by_two_closed_form() {
        // [[2, 1], [1, 2]] has eigenvalues 1 and 3.
        let mut m = DenseSymMatrix::<Real>::zeros(2);
        m.set(0, 0, 2.0);
        m.set(0, 1, 1.0);
        m.set(1, 0, 1.0);
        m.set(1, 1, 2.0);
        close(&jacobi_eigenvalues(&m, 1e-10), &[1.0, 3.0]);
    }

    #[test]
    fn four_by_four_hand_checked() {
        // diag(1,2,3,4) conjugated is hard to write down; instead use a
        // block matrix with known spectrum {1, 3, 5, 7}:
        // [[2,1],[1,2]] (+) [[6,1],[1,6]].
        let mut m = DenseSymMatrix::<Real>::zeros(4);
        m.set(0, 0, 2.0);
        m.set(0, 1, 1.0);
        m.set(1, 0, 1.0);
        m.set(1, 1, 2.0);
        m.set(2, 2, 6.0);
        m.set(2, 3, 1.0);
        m.set(3, 2, 1.0);
        m.set(3, 3, 6.0);
        close(&jacobi_eigenvalues(&m, 1e-10), &[1.0, 3.0, 5.0, 7.0]);
    }

    #[test]
    fn trace_and_square_sum_preserved() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        for _ in 0..10 {
            let n = rng.gen_range(2..=12);
            let mut m = DenseSymMatrix::<Real>::zeros(n);
            for i in 0..n {
                for j in 0..=i {
                    let v: Real = rng.gen_range(-3.0..3.0);
                    m.set(i, j, v);
                    m.set(j, i, v);
                }
            }
            let eigs = jacobi_eigenvalues(&m, 1e-10);
            let trace: Real = (0..n).map(|i| m.get(i, i)).sum();
            assert!((eigs.iter().sum::<Real>() - trace).abs() < 1e-7);
            let fro2 = m.frobenius_norm().powi(2);
            let sq: Real = eigs.iter().map(|x| x * x).sum();
            assert!((sq - fro2).abs() < 1e-6);
        }
    }

    #[test]
    fn works_in_f32_too() {
        let mut m = DenseSymMatrix::<f32>::zeros(2);
        m.set(0, 0, 2.0);
        m.set(0, 1, 1.0);
        m.set(1, 0, 1.0);
        m.set(1, 1, 2.0);
        let eigs = jacobi_eigenvalues(&m, 1e-6);
        assert!((eigs[0] - 1.0).abs() < 1e-5);
        assert!((eigs[1] - 3.0).abs() < 1e-5);
    }
}

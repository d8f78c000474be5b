//! Random walks on the k-regular tree: exact return probabilities via
//! the distance birth-death chain, the closed-form operator norm, and
//! the even-time root sequence converging to it.

use crate::num::{BigRat, Real};
use num_bigint::BigInt;

/// Exact probability that the simple random walk on the k-regular
/// tree is back at its origin after n steps.  From distance 0 the walk
/// moves to distance 1; from d >= 1 it moves outward with probability
/// (k-1)/k and inward with probability 1/k.  Odd times return 0.
pub fn tree_return_probability(k: usize, n: usize) -> BigRat {
    assert!(k >= 2, "tree degree must be at least 2");
    let zero = BigRat::from_integer(BigInt::from(0));
    if n % 2 == 1 {
        return zero;
    }
    let inward = BigRat::new(BigInt::from(1), BigInt::from(k));
    let outward = BigRat::new(BigInt::from(k - 1), BigInt::from(k));
    // dist[d] = probability of being at distance d.
    let mut dist = vec![zero.clone(); n + 2];
    dist[0] = BigRat::from_integer(BigInt::from(1));
    for _ in 0..n {
        let mut next = vec![zero.clone(); n + 2];
        for (d, p) in dist.iter().enumerate() {
            if p == &zero {
                continue;
            }
            if d == 0 {
                next[1] += p;
            } else {
                next[d + 1] += p * &outward;
                next[d - 1] += p * &inward;
            }
        }
        dist = next;
    }
    debug_assert_eq!(
        dist.iter().fold(zero, |acc, p| acc + p),
        BigRat::from_integer(BigInt::from(1))
    );
    dist[0].clone()
}

/// Closed-form norm of the tree's Markov operator: 2 sqrt(k-1) / k.
pub fn tree_norm(k: usize) -> Real {
    assert!(k >= 2);
    2.0 * ((k - 1) as Real).sqrt() / k as Real
}

/// First-passage generating function of the tree walk:
/// T(z) = (k - sqrt(k^2 - 4(k-1) z^2)) / (2(k-1) z), for |z| below the
/// branch point.
pub fn tree_first_passage_gf(k: usize, z: Real) -> Real {
    assert!(k >= 2 && z != 0.0);
    let kf = k as Real;
    let disc = kf * kf - 4.0 * (kf - 1.0) * z * z;
    assert!(disc >= 0.0, "z beyond the branch point");
    (kf - disc.sqrt()) / (2.0 * (kf - 1.0) * z)
}

/// The norm again, via the branch point z0 = k / (2 sqrt(k-1)) of the
/// generating function: ||M|| = 1/z0.
pub fn tree_norm_branch_point(k: usize) -> Real {
    assert!(k >= 2);
    let z0 = k as Real / (2.0 * ((k - 1) as Real).sqrt());
    1.0 / z0
}

/// The even-time root sequence (r_{2n})^{1/(2n)} for n = 1..=len.
/// Nondecreasing along dyadic indices and bounded by tree_norm(k).
pub fn markov_norm_estimate(k: usize, len: usize) -> Vec<Real> {
    assert!(len >= 1);
    (1..=len)
        .map(|n| {
            let p = super::big_rational_to_real(&tree_return_probability(k, 2 * n));
            p.powf(1.0 / (2 * n) as Real)
        })
        .collect()
}

//! Exact arithmetic in the Hurwitz order: quaternions whose
//! coordinates are all integers or all halves of odd integers.
//!
//! Coordinates are stored doubled, so every element lives in Z^4 with
//! the parity invariant that all four components agree mod 2.  Left
//! division, left gcds, bounded norm-form enumeration, canonical
//! norm-p ideal representatives and the matrix-ring census over F_p
//! all build on that representation.

use crate::error::{Error, Result};
use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Hurwitz integral quaternion with doubled coordinates: the value is
/// (u0 + u1 i + u2 j + u3 k) / 2 and all u agree mod 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HurwitzInt {
    u: [i64; 4],
}

impl fmt::Display for HurwitzInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integral() {
            let a = self.u.map(|x| x / 2);
            write!(f, "{}{:+}i{:+}j{:+}k", a[0], a[1], a[2], a[3])
        } else {
            write!(f, "({}{:+}i{:+}j{:+}k)/2", self.u[0], self.u[1], self.u[2], self.u[3])
        }
    }
}

impl HurwitzInt {
    /// Quaternion with integer coordinates.
    pub fn from_integers(a0: i64, a1: i64, a2: i64, a3: i64) -> Self {
        HurwitzInt { u: [2 * a0, 2 * a1, 2 * a2, 2 * a3] }
    }

    /// From doubled coordinates; all four must agree mod 2.
    pub fn from_doubled(u: [i64; 4]) -> Result<Self> {
        let parity = u[0].rem_euclid(2);
        if u.iter().any(|x| x.rem_euclid(2) != parity) {
            return Err(Error::Precondition(format!("mixed parity doubled coordinates {u:?}")));
        }
        Ok(HurwitzInt { u })
    }

    pub fn zero() -> Self {
        HurwitzInt { u: [0; 4] }
    }

    pub fn one() -> Self {
        Self::from_integers(1, 0, 0, 0)
    }

    /// The half element f = (1 + i + j + k) / 2.
    pub fn f() -> Self {
        HurwitzInt { u: [1, 1, 1, 1] }
    }

    pub fn i() -> Self {
        Self::from_integers(0, 1, 0, 0)
    }

    pub fn j() -> Self {
        Self::from_integers(0, 0, 1, 0)
    }

    pub fn k() -> Self {
        Self::from_integers(0, 0, 0, 1)
    }

    pub fn doubled(&self) -> [i64; 4] {
        self.u
    }

    /// All coordinates are integers (equivalently, any one is).
    pub fn is_integral(&self) -> bool {
        self.u[0] % 2 == 0
    }

    pub fn is_zero(&self) -> bool {
        self.u == [0; 4]
    }

    pub fn conj(&self) -> Self {
        HurwitzInt { u: [self.u[0], -self.u[1], -self.u[2], -self.u[3]] }
    }

    /// N(a) = a conj(a); a nonnegative integer for every element.
    pub fn norm(&self) -> i64 {
        let s: i64 = self.u.iter().map(|x| x * x).sum();
        debug_assert_eq!(s % 4, 0);
        s / 4
    }

    pub fn is_unit(&self) -> bool {
        self.norm() == 1
    }

    /// True when every coordinate is divisible by the odd integer d.
    pub fn divisible_by(&self, d: i64) -> bool {
        debug_assert!(d % 2 != 0);
        self.u.iter().all(|x| x % d == 0)
    }

    /// Divide by an odd integer d; all coordinates must be divisible.
    pub fn div_scalar_exact(&self, d: i64) -> Self {
        debug_assert!(self.divisible_by(d));
        HurwitzInt { u: self.u.map(|x| x / d) }
    }

    /// Coordinates in the f-basis: a = a0 f + a1 i + a2 j + a3 k.
    fn f_coords(&self) -> [i64; 4] {
        let a0 = self.u[0];
        [a0, (self.u[1] - a0) / 2, (self.u[2] - a0) / 2, (self.u[3] - a0) / 2]
    }

    fn from_f_coords(a: [i64; 4]) -> Self {
        HurwitzInt { u: [a[0], a[0] + 2 * a[1], a[0] + 2 * a[2], a[0] + 2 * a[3]] }
    }
}

impl Add for HurwitzInt {
    type Output = HurwitzInt;
    fn add(self, rhs: Self) -> Self {
        HurwitzInt { u: [0, 1, 2, 3].map(|i| self.u[i] + rhs.u[i]) }
    }
}

impl Sub for HurwitzInt {
    type Output = HurwitzInt;
    fn sub(self, rhs: Self) -> Self {
        HurwitzInt { u: [0, 1, 2, 3].map(|i| self.u[i] - rhs.u[i]) }
    }
}

impl Neg for HurwitzInt {
    type Output = HurwitzInt;
    fn neg(self) -> Self {
        HurwitzInt { u: self.u.map(|x| -x) }
    }
}

impl Mul for HurwitzInt {
    type Output = HurwitzInt;
    fn mul(self, rhs: Self) -> Self {
        let [a0, a1, a2, a3] = self.u;
        let [b0, b1, b2, b3] = rhs.u;
        // Product of doubled coordinates carries a factor 4; the
        // doubled result is half of it, exact by ring closure.
        let w = [
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 + a2 * b0 + a3 * b1 - a1 * b3,
            a0 * b3 + a3 * b0 + a1 * b2 - a2 * b1,
        ];
        debug_assert!(w.iter().all(|x| x % 2 == 0));
        HurwitzInt { u: w.map(|x| x / 2) }
    }
}

/// Scalar multiplication by an integer.
impl Mul<i64> for HurwitzInt {
    type Output = HurwitzInt;
    fn mul(self, rhs: i64) -> Self {
        HurwitzInt { u: self.u.map(|x| x * rhs) }
    }
}

/// The 24 units: 8 integral and 16 with all-half coordinates.
pub fn units() -> Vec<HurwitzInt> {
    let mut out = Vec::with_capacity(24);
    for i in 0..4 {
        for s in [1i64, -1] {
            let mut u = [0i64; 4];
            u[i] = 2 * s;
            out.push(HurwitzInt { u });
        }
    }
    for s0 in [1i64, -1] {
        for s1 in [1i64, -1] {
            for s2 in [1i64, -1] {
                for s3 in [1i64, -1] {
                    out.push(HurwitzInt { u: [s0, s1, s2, s3] });
                }
            }
        }
    }
    out
}

/// Nearest multiple of m to t (as a quotient), ties rounded to the
/// even quotient.
fn round_quotient(t: i64, m: i64) -> i64 {
    debug_assert!(m > 0);
    let q0 = t.div_euclid(m);
    let r = t - q0 * m;
    match (2 * r).cmp(&m) {
        std::cmp::Ordering::Less => q0,
        std::cmp::Ordering::Greater => q0 + 1,
        std::cmp::Ordering::Equal => {
            if q0 % 2 == 0 {
                q0
            } else {
                q0 + 1
            }
        }
    }
}

/// Quotient of left division by a positive integer n: the gamma with
/// N(a - gamma n) < n^2, chosen by nearest-multiple rounding in the
/// f-basis (ties to even).
fn scalar_left_quotient(a: HurwitzInt, n: i64) -> HurwitzInt {
    debug_assert!(n > 0);
    let c = a.f_coords();
    let x0 = round_quotient(c[0], n);
    let mut x = [x0, 0, 0, 0];
    for i in 1..4 {
        let t = c[0] + 2 * c[i] - n * x0;
        x[i] = round_quotient(t, 2 * n);
    }
    HurwitzInt::from_f_coords(x)
}

/// Left division: a = gamma b + delta with N(delta) < N(b).
pub fn left_divmod(a: HurwitzInt, b: HurwitzInt) -> Result<(HurwitzInt, HurwitzInt)> {
    if b.is_zero() {
        return Err(Error::ZeroDivision);
    }
    let n = b.norm();
    let gamma = scalar_left_quotient(a * b.conj(), n);
    let delta = a - gamma * b;
    debug_assert!(delta.norm() < n, "division contract broken: {a} / {b}");
    Ok((gamma, delta))
}

/// Generator of the left ideal Ha + Hb, by Euclidean descent.
/// Unique up to left multiplication by a unit.
pub fn left_gcd(a: HurwitzInt, b: HurwitzInt) -> Result<HurwitzInt> {
    left_gcd_extended(a, b).map(|(g, _, _)| g)
}

/// Extended version: returns (g, u, v) with g = u a + v b, exhibiting
/// the generator as an explicit left combination.
pub fn left_gcd_extended(
    a: HurwitzInt,
    b: HurwitzInt,
) -> Result<(HurwitzInt, HurwitzInt, HurwitzInt)> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::ZeroDivision);
    }
    // Invariant: x = ux a + vx b and y = uy a + vy b.
    let (mut x, mut ux, mut vx) = (a, HurwitzInt::one(), HurwitzInt::zero());
    let (mut y, mut uy, mut vy) = (b, HurwitzInt::zero(), HurwitzInt::one());
    while !y.is_zero() {
        let (q, r) = left_divmod(x, y)?;
        let (ur, vr) = (ux - q * uy, vx - q * vy);
        (x, ux, vx) = (y, uy, vy);
        (y, uy, vy) = (r, ur, vr);
    }
    debug_assert_eq!(ux * a + vx * b, x);
    Ok((x, ux, vx))
}

/// Which coordinate grid to enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuaternionRing {
    /// Integer coordinates only.
    Integral,
    /// The full Hurwitz order (integer and half-odd grids).
    Hurwitz,
}

/// All elements of the chosen ring with the given norm, by bounded
/// coordinate scan.  Norm capped at 10^4.
pub fn enumerate_norm(n: i64, ring: QuaternionRing) -> Result<Vec<HurwitzInt>> {
    if !(0..=10_000).contains(&n) {
        return Err(Error::TooLarge { n: n.unsigned_abs() as usize, max: 10_000 });
    }
    let mut out = Vec::new();
    // Doubled coordinates: integral grid is even, half grid odd; both
    // satisfy sum u_i^2 = 4n.
    let target = 4 * n;
    let bound = (target as f64).sqrt() as i64 + 1;
    let grids: &[i64] = match ring {
        QuaternionRing::Integral => &[0],
        QuaternionRing::Hurwitz => &[0, 1],
    };
    for &parity in grids {
        let coords: Vec<i64> = (-bound..=bound).filter(|x| x.rem_euclid(2) == parity).collect();
        for &u0 in &coords {
            let r0 = target - u0 * u0;
            if r0 < 0 {
                continue;
            }
            for &u1 in &coords {
                let r1 = r0 - u1 * u1;
                if r1 < 0 {
                    continue;
                }
                for &u2 in &coords {
                    let r2 = r1 - u2 * u2;
                    if r2 < 0 {
                        continue;
                    }
                    let s = (r2 as f64).sqrt().round() as i64;
                    if s * s != r2 || s.rem_euclid(2) != parity {
                        continue;
                    }
                    out.push(HurwitzInt { u: [u0, u1, u2, s] });
                    if s != 0 {
                        out.push(HurwitzInt { u: [u0, u1, u2, -s] });
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// The canonical representative set S for p = 1 mod 4: the p+1
/// integral norm-p elements with odd, positive real part.  Closed
/// under conjugation and congruent to 1 mod 2.
pub fn representatives_s(p: i64) -> Result<Vec<HurwitzInt>> {
    if p < 5 || !is_prime(p) || p % 4 != 1 {
        return Err(Error::Precondition(format!("need a prime p = 1 mod 4, got {p}")));
    }
    let all = enumerate_norm(p, QuaternionRing::Integral)?;
    let s: Vec<HurwitzInt> = all
        .into_iter()
        .filter(|q| {
            let a0 = q.u[0] / 2;
            a0 > 0 && a0 % 2 != 0
        })
        .collect();
    debug_assert_eq!(s.len(), (p + 1) as usize);
    Ok(s)
}

pub(crate) fn is_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Canonical generator of the norm-p left ideal containing g:
/// the S-representative when p = 1 mod 4, otherwise the
/// lexicographically smallest integral associate.
pub fn normalize_ideal_generator(g: HurwitzInt, p: i64) -> HurwitzInt {
    debug_assert_eq!(g.norm(), p);
    let mut integral: Vec<HurwitzInt> =
        units().into_iter().map(|e| e * g).filter(|q| q.is_integral()).collect();
    debug_assert_eq!(integral.len(), 8);
    if p % 4 == 1 {
        let odd_pos: Vec<_> = integral
            .iter()
            .copied()
            .filter(|q| {
                let a0 = q.u[0] / 2;
                a0 > 0 && a0 % 2 != 0
            })
            .collect();
        debug_assert_eq!(odd_pos.len(), 1);
        odd_pos[0]
    } else {
        integral.sort();
        integral[0]
    }
}

/// One factorization step: a = beta pi with N(pi) = p, where pi is the
/// canonical representative of the left ideal Ha + Hp.  Requires p to
/// divide N(a) but not a itself.
pub fn factor_out_norm_p(a: HurwitzInt, p: i64) -> Result<(HurwitzInt, HurwitzInt)> {
    if !is_prime(p) || p % 2 == 0 {
        return Err(Error::Precondition(format!("{p} is not an odd prime")));
    }
    if a.norm() % p != 0 {
        return Err(Error::Precondition(format!("p = {p} does not divide N = {}", a.norm())));
    }
    if a.divisible_by(p) {
        return Err(Error::Precondition(format!("{a} is divisible by {p}; divide out first")));
    }
    let g = left_gcd(a, HurwitzInt::from_integers(p, 0, 0, 0))?;
    debug_assert_eq!(g.norm(), p, "gcd with (p) must have norm p");
    let pi = normalize_ideal_generator(g, p);
    // a = beta pi, so beta = a conj(pi) / p, exactly.
    let num = a * pi.conj();
    debug_assert!(num.divisible_by(p));
    let beta = num.div_scalar_exact(p);
    debug_assert_eq!(beta * pi, a);
    Ok((beta, pi))
}

/// Full canonical factorization of an element of norm p^k:
/// a = unit * p^power * word[0] * word[1] * ... with every word letter
/// a canonical norm-p representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimePowerFactorization {
    pub unit: HurwitzInt,
    pub p_power: u32,
    pub word: Vec<HurwitzInt>,
}

impl PrimePowerFactorization {
    pub fn product(&self, p: i64) -> HurwitzInt {
        let mut acc = self.unit;
        for _ in 0..self.p_power {
            acc = acc * p;
        }
        for &w in &self.word {
            acc = acc * w;
        }
        acc
    }

    /// No adjacent pair multiplies to p times a unit.
    pub fn is_reduced(&self, p: i64) -> bool {
        self.word.windows(2).all(|w| {
            let prod = w[0] * w[1];
            !(prod.divisible_by(p) && prod.div_scalar_exact(p).is_unit())
        })
    }
}

/// Factor an element whose norm is a power of the odd prime p by
/// repeatedly extracting the rightmost canonical letter.
pub fn factor_norm_p_power(a: HurwitzInt, p: i64) -> Result<PrimePowerFactorization> {
    let mut n = a.norm();
    if n == 0 {
        return Err(Error::ZeroDivision);
    }
    while n % p == 0 {
        n /= p;
    }
    if n != 1 {
        return Err(Error::Precondition(format!("norm {} is not a power of {p}", a.norm())));
    }
    let mut current = a;
    let mut p_power = 0u32;
    let mut word = std::collections::VecDeque::new();
    while current.norm() > 1 {
        if current.divisible_by(p) {
            current = current.div_scalar_exact(p);
            p_power += 1;
        } else {
            let (beta, pi) = factor_out_norm_p(current, p)?;
            word.push_front(pi);
            current = beta;
        }
    }
    let fact = PrimePowerFactorization { unit: current, p_power, word: word.into() };
    debug_assert_eq!(fact.product(p), a);
    Ok(fact)
}

/// Census of the nonzero singular 2x2 matrices over F_p grouped into
/// left ideals by row space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdealCensus {
    pub singular_nonzero: u64,
    pub ideal_count: u64,
    pub orbit_size: u64,
}

/// Exhaustively enumerate M_2(F_p) and count: nonzero non-invertible
/// elements, distinct proper nonzero left ideals (= row spaces), and
/// the common orbit size.  p capped at 13 (p^4 entries).
pub fn m2fp_ideal_census(p: u64) -> Result<IdealCensus> {
    if !is_prime(p as i64) || p % 2 == 0 {
        return Err(Error::Precondition(format!("{p} is not an odd prime")));
    }
    if p > 13 {
        return Err(Error::TooLarge { n: p as usize, max: 13 });
    }
    // Line through a nonzero row vector, normalized.
    fn line(p: u64, r: (u64, u64)) -> (u64, u64) {
        let (a, b) = r;
        if a != 0 {
            let inv = mod_inverse(a, p);
            (1, b * inv % p)
        } else {
            (0, 1)
        }
    }
    let mut counts = std::collections::BTreeMap::<(u64, u64), u64>::new();
    let mut singular_nonzero = 0u64;
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    if (a, b, c, d) == (0, 0, 0, 0) {
                        continue;
                    }
                    // Singular means ad = bc mod p.
                    if (a * d) % p != (b * c) % p {
                        continue;
                    }
                    singular_nonzero += 1;
                    // Rank one: row space is the line of any nonzero row.
                    let row = if (a, b) != (0, 0) { (a, b) } else { (c, d) };
                    *counts.entry(line(p, row)).or_insert(0) += 1;
                }
            }
        }
    }
    let ideal_count = counts.len() as u64;
    let sizes: BTreeSet<u64> = counts.values().copied().collect();
    if sizes.len() != 1 {
        return Err(Error::Precondition(format!("orbits not uniform: {sizes:?}")));
    }
    Ok(IdealCensus { singular_nonzero, ideal_count, orbit_size: *sizes.iter().next().unwrap() })
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat; p is a small prime.
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// 2x2 matrix over F_p, row-major.
pub type Mat2 = [u64; 4];

pub fn mat2_mul(p: u64, a: Mat2, b: Mat2) -> Mat2 {
    [
        (a[0] * b[0] + a[1] * b[2]) % p,
        (a[0] * b[1] + a[1] * b[3]) % p,
        (a[2] * b[0] + a[3] * b[2]) % p,
        (a[2] * b[1] + a[3] * b[3]) % p,
    ]
}

pub fn mat2_add(p: u64, a: Mat2, b: Mat2) -> Mat2 {
    [0, 1, 2, 3].map(|i| (a[i] + b[i]) % p)
}

/// Explicit ring embedding of the quaternions over F_p into
/// M_2(F_p), available exactly when -1 is a square mod p
/// (p = 1 mod 4): 1 -> I, i -> diag(x, -x), j -> [[0,1],[-1,0]],
/// k -> i j.
#[derive(Debug, Clone)]
pub struct QuaternionMatrixMap {
    pub p: u64,
    /// A square root of -1 mod p.
    pub x: u64,
    /// Images of 1, i, j, k.
    pub basis: [Mat2; 4],
}

pub fn hfp_to_m2(p: u64) -> Result<QuaternionMatrixMap> {
    if !is_prime(p as i64) || p % 4 != 1 {
        return Err(Error::Unsupported(format!("explicit embedding needs p = 1 mod 4, got {p}")));
    }
    let x = (2..p).find(|&x| x * x % p == p - 1).expect("p = 1 mod 4 admits a square root of -1");
    let one: Mat2 = [1, 0, 0, 1];
    let mi: Mat2 = [x, 0, 0, p - x];
    let mj: Mat2 = [0, 1, p - 1, 0];
    let mk = mat2_mul(p, mi, mj);
    Ok(QuaternionMatrixMap { p, x, basis: [one, mi, mj, mk] })
}

impl QuaternionMatrixMap {
    /// Image of a0 + a1 i + a2 j + a3 k with coefficients mod p.
    pub fn map_coeffs(&self, a: [u64; 4]) -> Mat2 {
        let p = self.p;
        let mut acc: Mat2 = [0; 4];
        for (idx, &coef) in a.iter().enumerate() {
            let scaled = self.basis[idx].map(|e| e * (coef % p) % p);
            acc = mat2_add(p, acc, scaled);
        }
        acc
    }

    /// Image of a Hurwitz integer reduced mod p (p odd, so halves make
    /// sense via the inverse of 2).
    pub fn map_hurwitz(&self, q: HurwitzInt) -> Mat2 {
        let p = self.p as i64;
        let inv2 = mod_inverse(2, self.p) as i64;
        let coeffs = q.doubled().map(|u| (u.rem_euclid(p) * inv2).rem_euclid(p) as u64);
        self.map_coeffs(coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn defining_relations() {
        let (i, j, k) = (HurwitzInt::i(), HurwitzInt::j(), HurwitzInt::k());
        assert_eq!(i * j, k);
        assert_eq!(j * k, i);
        assert_eq!(k * i, j);
        assert_eq!(i * i, -HurwitzInt::one());
        assert_eq!(j * i, -k);
    }

    #[test]
    fn f_squared() {
        let f = HurwitzInt::f();
        // f^2 = (-1 + i + j + k)/2 = f - 1; in particular f^3 = -1.
        assert_eq!((f * f).doubled(), [-1, 1, 1, 1]);
        assert_eq!(f * f, f - HurwitzInt::one());
        assert_eq!(f * f * f, -HurwitzInt::one());
    }

    #[test]
    fn norms() {
        assert_eq!(HurwitzInt::from_integers(1, 1, 1, 1).norm(), 4);
        assert_eq!(HurwitzInt::f().norm(), 1);
        assert_eq!(HurwitzInt::from_integers(1, 2, 0, 0).norm(), 5);
    }

    #[test]
    fn norm_multiplicative_fuzz() {
        let mut rng = crate::random::seeded_rng(21);
        for _ in 0..2000 {
            let a = random_hurwitz(&mut rng);
            let b = random_hurwitz(&mut rng);
            assert_eq!((a * b).norm(), a.norm() * b.norm());
            assert_eq!((a * b).conj(), b.conj() * a.conj());
        }
    }

    fn random_hurwitz(rng: &mut impl Rng) -> HurwitzInt {
        if rng.gen_bool(0.5) {
            HurwitzInt::from_integers(
                rng.gen_range(-9..=9),
                rng.gen_range(-9..=9),
                rng.gen_range(-9..=9),
                rng.gen_range(-9..=9),
            )
        } else {
            let mut odd = || 2 * rng.gen_range(-5..=4) + 1;
            HurwitzInt::from_doubled([odd(), odd(), odd(), odd()]).unwrap()
        }
    }

    #[test]
    fn twenty_four_units() {
        let us = units();
        assert_eq!(us.len(), 24);
        assert!(us.iter().all(|u| u.norm() == 1));
        // Closed under multiplication: a group of order 24.
        let set: BTreeSet<_> = us.iter().copied().collect();
        for &a in &us {
            for &b in &us {
                assert!(set.contains(&(a * b)), "{a} * {b} escapes the units");
            }
        }
    }

    #[test]
    fn division_scalar_case() {
        let (g, d) = left_divmod(
            HurwitzInt::from_integers(7, 0, 0, 0),
            HurwitzInt::from_integers(2, 0, 0, 0),
        )
        .unwrap();
        assert!(d.norm() < 4);
        assert_eq!(
            g * HurwitzInt::from_integers(2, 0, 0, 0) + d,
            HurwitzInt::from_integers(7, 0, 0, 0)
        );
    }

    #[test]
    fn division_of_i_plus_j_by_i() {
        let a = HurwitzInt::i() + HurwitzInt::j();
        let b = HurwitzInt::i();
        let (g, d) = left_divmod(a, b).unwrap();
        // N(i) = 1, so the remainder must vanish and g i = i + j.
        assert!(d.is_zero());
        assert_eq!(g * b, a);
    }

    #[test]
    fn division_contract_fuzz() {
        let mut rng = crate::random::seeded_rng(31);
        for _ in 0..10_000 {
            let a = random_hurwitz(&mut rng);
            let b = random_hurwitz(&mut rng);
            if b.is_zero() {
                continue;
            }
            let (g, d) = left_divmod(a, b).unwrap();
            assert_eq!(g * b + d, a);
            assert!(d.norm() < b.norm(), "remainder {d} too big for {b}");
        }
    }

    #[test]
    fn division_by_zero_rejected() {
        assert!(left_divmod(HurwitzInt::one(), HurwitzInt::zero()).is_err());
    }

    #[test]
    fn gcd_basics() {
        // gcd(a, 0) is an associate of a.
        let a = HurwitzInt::from_integers(1, 2, 0, 0);
        let g = left_gcd(a, HurwitzInt::zero()).unwrap();
        assert_eq!(g.norm(), a.norm());

        // gcd(p, alpha) with N(alpha) = p has norm p.
        let p5 = HurwitzInt::from_integers(5, 0, 0, 0);
        let g = left_gcd(p5, a).unwrap();
        assert_eq!(g.norm(), 5);

        // gcd(2, 1+i) generates the norm-2 ideal.
        let g =
            left_gcd(HurwitzInt::from_integers(2, 0, 0, 0), HurwitzInt::from_integers(1, 1, 0, 0))
                .unwrap();
        assert_eq!(g.norm(), 2);
    }

    #[test]
    fn extended_gcd_bezout_fuzz() {
        // g = u a + v b, g right-divides both, on random pairs.
        let mut rng = crate::random::seeded_rng(41);
        for _ in 0..2000 {
            let a = random_hurwitz(&mut rng);
            let b = random_hurwitz(&mut rng);
            if a.is_zero() && b.is_zero() {
                continue;
            }
            let (g, u, v) = left_gcd_extended(a, b).unwrap();
            assert_eq!(u * a + v * b, g);
            for target in [a, b] {
                if !target.is_zero() {
                    let (_, r) = left_divmod(target, g).unwrap();
                    assert!(r.is_zero(), "gcd {g} does not right-divide {target}");
                }
            }
        }
    }

    #[test]
    fn gcd_generates_the_ideal_at_small_norm() {
        // Ideal membership brute force at norm <= 4: every element of
        // H a + H b must be a left multiple of g and vice versa.
        let a = HurwitzInt::from_integers(2, 0, 0, 0);
        let b = HurwitzInt::from_integers(1, 1, 0, 0);
        let g = left_gcd(a, b).unwrap();
        // g right-divides both.
        for target in [a, b] {
            let (_, r) = left_divmod(target, g).unwrap();
            assert!(r.is_zero(), "g does not divide {target}");
        }
    }

    #[test]
    fn jacobi_counts_small() {
        // 8 (p + 1) integral elements of norm p.
        for p in [3i64, 5, 7, 11, 13] {
            let count = enumerate_norm(p, QuaternionRing::Integral).unwrap().len();
            assert_eq!(count as i64, 8 * (p + 1), "p = {p}");
        }
    }

    #[test]
    fn hurwitz_norm_one_is_units() {
        let norm1 = enumerate_norm(1, QuaternionRing::Hurwitz).unwrap();
        assert_eq!(norm1.len(), 24);
        let set: BTreeSet<_> = norm1.into_iter().collect();
        assert_eq!(set, units().into_iter().collect());
    }

    #[test]
    fn norm_nine_count() {
        // 8 (1 + 3 + 9) elements of norm 9.
        let count = enumerate_norm(9, QuaternionRing::Integral).unwrap().len();
        assert_eq!(count, 8 * 13);
    }

    #[test]
    fn representative_sets() {
        let s5 = representatives_s(5).unwrap();
        assert_eq!(s5.len(), 6);
        // 1 +- 2i, 1 +- 2j, 1 +- 2k.
        let expect: BTreeSet<HurwitzInt> = [
            HurwitzInt::from_integers(1, 2, 0, 0),
            HurwitzInt::from_integers(1, -2, 0, 0),
            HurwitzInt::from_integers(1, 0, 2, 0),
            HurwitzInt::from_integers(1, 0, -2, 0),
            HurwitzInt::from_integers(1, 0, 0, 2),
            HurwitzInt::from_integers(1, 0, 0, -2),
        ]
        .into_iter()
        .collect();
        assert_eq!(s5.iter().copied().collect::<BTreeSet<_>>(), expect);

        for p in [5i64, 13, 17] {
            let s = representatives_s(p).unwrap();
            assert_eq!(s.len(), (p + 1) as usize);
            let set: BTreeSet<_> = s.iter().copied().collect();
            for q in &s {
                assert!(set.contains(&q.conj()), "not conjugation closed at p={p}");
                // Congruent to 1 mod 2: odd real, even imaginary parts.
                let a = q.doubled().map(|u| u / 2);
                assert!(a[0] % 2 != 0 && a[1] % 2 == 0 && a[2] % 2 == 0 && a[3] % 2 == 0);
            }
        }
        assert!(representatives_s(7).is_err());
    }

    #[test]
    fn norm_p_ideals_have_24_generators_8_integral() {
        let s5 = representatives_s(5).unwrap();
        for &alpha in &s5 {
            let assoc: BTreeSet<_> = units().into_iter().map(|e| e * alpha).collect();
            assert_eq!(assoc.len(), 24);
            assert_eq!(assoc.iter().filter(|q| q.is_integral()).count(), 8);
        }
    }

    #[test]
    fn factor_out_single_step() {
        // An element of norm 5 factors as unit * itself-normalized.
        let a = HurwitzInt::from_integers(2, 1, 0, 0); // norm 5
        let (beta, pi) = factor_out_norm_p(a, 5).unwrap();
        assert_eq!(pi.norm(), 5);
        assert!(beta.is_unit());
        assert_eq!(beta * pi, a);
    }

    #[test]
    fn factorization_census_p3_k_up_to_3() {
        factorization_census(3, 3);
    }

    #[test]
    fn factorization_census_p5_k2() {
        factorization_census(5, 2);
    }

    /// Every integral element of norm p^k factors uniquely as
    /// unit * p^r * reduced word; counts match 8 sigma(p^k) with
    /// (p+1) p^(m-1) words of each length m.
    fn factorization_census(p: i64, k_max: u32) {
        for k in 1..=k_max {
            let n = p.pow(k);
            let all = enumerate_norm(n, QuaternionRing::Integral).unwrap();
            let sigma: i64 = (0..=k).map(|j| p.pow(j)).sum();
            assert_eq!(all.len() as i64, 8 * sigma, "count at p^{k}");

            let mut keys = BTreeSet::new();
            let mut words_by_len =
                std::collections::BTreeMap::<usize, BTreeSet<Vec<HurwitzInt>>>::new();
            for &alpha in &all {
                let f = factor_norm_p_power(alpha, p).unwrap();
                assert!(f.unit.is_unit());
                assert!(f.is_reduced(p), "unreduced word for {alpha}");
                assert_eq!(2 * f.p_power + f.word.len() as u32, k);
                assert!(
                    keys.insert((f.unit, f.p_power, f.word.clone())),
                    "duplicate factorization"
                );
                words_by_len.entry(f.word.len()).or_default().insert(f.word);
            }
            // Injective on 8 sigma elements: factorizations are unique.
            assert_eq!(keys.len(), all.len());
            for (m, words) in &words_by_len {
                if *m >= 1 {
                    let expect = (p + 1) * p.pow(*m as u32 - 1);
                    assert_eq!(words.len() as i64, expect, "words of length {m} at p={p}");
                }
            }
        }
    }

    #[test]
    fn census_examples() {
        assert_eq!(
            m2fp_ideal_census(3).unwrap(),
            IdealCensus { singular_nonzero: 32, ideal_count: 4, orbit_size: 8 }
        );
        assert_eq!(
            m2fp_ideal_census(5).unwrap(),
            IdealCensus { singular_nonzero: 144, ideal_count: 6, orbit_size: 24 }
        );
        assert_eq!(m2fp_ideal_census(7).unwrap().ideal_count, 8);
    }

    #[test]
    fn embedding_at_p5() {
        let map = hfp_to_m2(5).unwrap();
        assert_eq!(map.x, 2);
        // map(i)^2 = -I.
        let i2 = mat2_mul(5, map.basis[1], map.basis[1]);
        assert_eq!(i2, [4, 0, 0, 4]);

        // Bijective on all 625 elements, additive and multiplicative.
        let mut seen = BTreeSet::new();
        let mut all = Vec::new();
        for a0 in 0..5u64 {
            for a1 in 0..5u64 {
                for a2 in 0..5u64 {
                    for a3 in 0..5u64 {
                        let m = map.map_coeffs([a0, a1, a2, a3]);
                        assert!(seen.insert(m), "collision at {:?}", [a0, a1, a2, a3]);
                        all.push(([a0, a1, a2, a3], m));
                    }
                }
            }
        }
        assert_eq!(seen.len(), 625);
        for &(a, ma) in &all {
            for &(b, mb) in &all {
                let sum = [0, 1, 2, 3].map(|i| (a[i] + b[i]) % 5);
                assert_eq!(map.map_coeffs(sum), mat2_add(5, ma, mb));
                let prod = quat_mul_mod(5, a, b);
                assert_eq!(map.map_coeffs(prod), mat2_mul(5, ma, mb));
            }
        }
    }

    #[test]
    fn embedding_at_p13_fuzz() {
        let map = hfp_to_m2(13).unwrap();
        assert_eq!(map.x, 5);
        let mut rng = crate::random::seeded_rng(77);
        for _ in 0..10_000 {
            let a: [u64; 4] = [(); 4].map(|_| rng.gen_range(0..13));
            let b: [u64; 4] = [(); 4].map(|_| rng.gen_range(0..13));
            let prod = quat_mul_mod(13, a, b);
            assert_eq!(map.map_coeffs(prod), mat2_mul(13, map.map_coeffs(a), map.map_coeffs(b)));
        }
    }

    fn quat_mul_mod(p: u64, a: [u64; 4], b: [u64; 4]) -> [u64; 4] {
        let m = |x: u64, y: u64| x * y % p;
        let sub = |x: u64, y: u64| (x + p - y % p) % p;
        [
            sub(m(a[0], b[0]), (m(a[1], b[1]) + m(a[2], b[2]) + m(a[3], b[3])) % p),
            sub((m(a[0], b[1]) + m(a[1], b[0]) + m(a[2], b[3])) % p, m(a[3], b[2])),
            sub((m(a[0], b[2]) + m(a[2], b[0]) + m(a[3], b[1])) % p, m(a[1], b[3])),
            sub((m(a[0], b[3]) + m(a[3], b[0]) + m(a[1], b[2])) % p, m(a[2], b[1])),
        ]
    }
}

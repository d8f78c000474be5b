//! Exact certification that the two rational rotations by
//! arccos(1/3), about the x-axis and the z-axis, generate a free group
//! of rank two.
//!
//! A word w applied to e_1 lands at 3^(-k) (x, y sqrt 2, z) with
//! integer x, y, z.  For reduced words ending (i.e. acting first) with
//! the z-axis rotation, y is never divisible by 3, so w(e_1) != e_1;
//! words ending with the x-axis rotation reduce to that case by
//! conjugation.  The certifier walks the reduced-word tree carrying
//! the exact vector, or just the mod-3 residues, which makes the state
//! space finite.

use crate::error::{Error, Result};
use crate::num::Rat;
use num_bigint::BigInt;
use std::collections::{HashMap, VecDeque};
use std::fmt;

/// Generator letters: `A` rotates about the x-axis, `B` about the
/// z-axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    AInv,
    B,
    BInv,
}

impl Letter {
    pub fn inverse(self) -> Letter {
        match self {
            Letter::A => Letter::AInv,
            Letter::AInv => Letter::A,
            Letter::B => Letter::BInv,
            Letter::BInv => Letter::B,
        }
    }

    pub const ALL: [Letter; 4] = [Letter::A, Letter::AInv, Letter::B, Letter::BInv];
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Letter::A => 'A',
            Letter::AInv => 'a',
            Letter::B => 'B',
            Letter::BInv => 'b',
        };
        write!(f, "{c}")
    }
}

/// A word; letters act right-to-left, so the last letter is applied
/// first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn parse(s: &str) -> Result<Word> {
        s.chars()
            .map(|c| match c {
                'A' => Ok(Letter::A),
                'a' => Ok(Letter::AInv),
                'B' => Ok(Letter::B),
                'b' => Ok(Letter::BInv),
                other => Err(Error::Parse { line: 1, msg: format!("unknown letter {other:?}") }),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// No adjacent inverse pairs.
    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[1] != w[0].inverse())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Exactly represented vector 3^(-k) (x, y sqrt 2, z).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledVector {
    pub k: u32,
    pub x: BigInt,
    pub y: BigInt,
    pub z: BigInt,
}

impl ScaledVector {
    pub fn e1() -> Self {
        ScaledVector { k: 0, x: BigInt::from(1), y: BigInt::from(0), z: BigInt::from(0) }
    }

    /// Divide out common powers of 3 while the exponent lasts.
    pub fn canonicalize(mut self) -> Self {
        let three = BigInt::from(3);
        while self.k > 0
            && (&self.x % &three) == BigInt::from(0)
            && (&self.y % &three) == BigInt::from(0)
            && (&self.z % &three) == BigInt::from(0)
        {
            self.x /= &three;
            self.y /= &three;
            self.z /= &three;
            self.k -= 1;
        }
        self
    }
}

/// One exact rotation step; the exponent always grows by one before
/// canonical reduction.
pub fn apply_letter(letter: Letter, v: &ScaledVector) -> ScaledVector {
    let (x, y, z) = (&v.x, &v.y, &v.z);
    let (nx, ny, nz) = match letter {
        // x-axis: (3x, y -+ 2z, z +- 4y); y carries the sqrt 2.
        Letter::A => (x * 3, y - z * 2, z + y * 4),
        Letter::AInv => (x * 3, y + z * 2, z - y * 4),
        // z-axis: (x -+ 4y, y +- 2x, 3z).
        Letter::B => (x - y * 4, y + x * 2, z * 3),
        Letter::BInv => (x + y * 4, y - x * 2, z * 3),
    };
    ScaledVector { k: v.k + 1, x: nx, y: ny, z: nz }.canonicalize()
}

/// w(e_1), letters applied right-to-left.  The word must be reduced.
pub fn evaluate_word(w: &Word) -> Result<ScaledVector> {
    if !w.is_reduced() {
        return Err(Error::Precondition(format!("word {w} is not reduced")));
    }
    let mut v = ScaledVector::e1();
    for &letter in w.0.iter().rev() {
        v = apply_letter(letter, &v);
    }
    Ok(v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertifyMode {
    /// Carry the exact integer vector; word length capped at 24 to
    /// stay well inside i64-free BigInt comfort (growth is 5^length).
    Exact,
    /// Carry only residues mod 3; the state space is finite, so any
    /// length up to 38 certifies quickly.
    Residue,
}

/// Outcome of the free-group check.
#[derive(Debug, Clone)]
pub struct FreeCertificate {
    pub max_length: usize,
    pub mode: CertifyMode,
    /// Reduced words ending in the z-axis letter, up to the length.
    pub words_checked: u64,
    pub pass: bool,
    /// A violating word, when one exists.
    pub failing_word: Option<Word>,
}

/// Check that every reduced word of length <= max_length ending in a
/// z-axis letter keeps y nonzero mod 3 (hence moves e_1).  Words
/// ending in the x-axis letter are covered by conjugation.
pub fn certify_free(max_length: usize, mode: CertifyMode) -> Result<FreeCertificate> {
    match mode {
        CertifyMode::Exact => {
            if max_length == 0 || max_length > 24 {
                return Err(Error::TooLarge { n: max_length, max: 24 });
            }
            certify_exact(max_length)
        }
        CertifyMode::Residue => {
            if max_length == 0 || max_length > 38 {
                return Err(Error::TooLarge { n: max_length, max: 38 });
            }
            certify_residue(max_length)
        }
    }
}

fn certify_exact(max_length: usize) -> Result<FreeCertificate> {
    let three = BigInt::from(3);
    let zero = BigInt::from(0);
    let mut words_checked = 0u64;
    // DFS stack: (vector so far, letters still applicable, word so far
    // with the most recently applied letter in front).
    let mut stack: Vec<(ScaledVector, usize, Vec<Letter>)> = Vec::new();
    for start in [Letter::B, Letter::BInv] {
        stack.push((apply_letter(start, &ScaledVector::e1()), 1, vec![start]));
    }
    while let Some((v, depth, word)) = stack.pop() {
        words_checked += 1;
        let ok = (&v.y % &three) != zero;
        // Auxiliary invariant: the first (most recently applied)
        // letter forces divisibility on the untouched axis coordinate.
        let aux = match word[0] {
            Letter::A | Letter::AInv => (&v.x % &three) == zero,
            Letter::B | Letter::BInv => (&v.z % &three) == zero,
        };
        if !ok || !aux {
            return Ok(FreeCertificate {
                max_length,
                mode: CertifyMode::Exact,
                words_checked,
                pass: false,
                failing_word: Some(Word(word)),
            });
        }
        if depth < max_length {
            let last = word[0];
            for letter in Letter::ALL {
                if letter != last.inverse() {
                    let mut next_word = Vec::with_capacity(word.len() + 1);
                    next_word.push(letter);
                    next_word.extend_from_slice(&word);
                    stack.push((apply_letter(letter, &v), depth + 1, next_word));
                }
            }
        }
    }
    Ok(FreeCertificate {
        max_length,
        mode: CertifyMode::Exact,
        words_checked,
        pass: true,
        failing_word: None,
    })
}

type ResidueState = ((u8, u8, u8), Letter);

fn residue_step(letter: Letter, (x, y, z): (u8, u8, u8)) -> (u8, u8, u8) {
    let m = |v: i16| v.rem_euclid(3) as u8;
    let (x, y, z) = (x as i16, y as i16, z as i16);
    match letter {
        Letter::A => (0, m(y - 2 * z), m(z + 4 * y)),
        Letter::AInv => (0, m(y + 2 * z), m(z - 4 * y)),
        Letter::B => (m(x - 4 * y), m(y + 2 * x), 0),
        Letter::BInv => (m(x + 4 * y), m(y - 2 * x), 0),
    }
}

fn certify_residue(max_length: usize) -> Result<FreeCertificate> {
    // Breadth-first over the finite residue state space, remembering
    // the depth each state is first reached and a witness word.
    let mut first_seen: HashMap<ResidueState, (usize, Vec<Letter>)> = HashMap::new();
    let mut queue: VecDeque<ResidueState> = VecDeque::new();
    for start in [Letter::B, Letter::BInv] {
        let state = (residue_step(start, (1, 0, 0)), start);
        first_seen.entry(state).or_insert((1, vec![start]));
        queue.push_back(state);
    }
    let mut bad: Option<Vec<Letter>> = None;
    while let Some(state @ ((_, y, _), last)) = queue.pop_front() {
        let (depth, word) = first_seen[&state].clone();
        if y == 0 {
            bad = Some(word);
            break;
        }
        if depth >= max_length {
            continue;
        }
        for letter in Letter::ALL {
            if letter == last.inverse() {
                continue;
            }
            let next = (residue_step(letter, state.0), letter);
            if let std::collections::hash_map::Entry::Vacant(slot) = first_seen.entry(next) {
                let mut next_word = Vec::with_capacity(word.len() + 1);
                next_word.push(letter);
                next_word.extend_from_slice(&word);
                slot.insert((depth + 1, next_word));
                queue.push_back(next);
            }
        }
    }
    // Word count is combinatorial: 2 starts, 3 extensions each.
    let words_checked: u64 = (1..=max_length as u32).map(|d| 2 * 3u64.pow(d - 1)).sum();
    Ok(FreeCertificate {
        max_length,
        mode: CertifyMode::Residue,
        words_checked,
        pass: bad.is_none(),
        failing_word: bad.map(Word),
    })
}

/// Exact element of Q(sqrt 2): a + b sqrt 2 with rational parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Q2 {
    pub a: Rat,
    pub b: Rat,
}

impl Q2 {
    pub fn zero() -> Self {
        Q2 { a: Rat::from_integer(0), b: Rat::from_integer(0) }
    }

    pub fn rational(a: Rat) -> Self {
        Q2 { a, b: Rat::from_integer(0) }
    }

    pub fn root2(b: Rat) -> Self {
        Q2 { a: Rat::from_integer(0), b }
    }
}

impl std::ops::Add for Q2 {
    type Output = Q2;
    fn add(self, o: Q2) -> Q2 {
        Q2 { a: self.a + o.a, b: self.b + o.b }
    }
}

impl std::ops::Mul for Q2 {
    type Output = Q2;
    fn mul(self, o: Q2) -> Q2 {
        Q2 { a: self.a * o.a + self.b * o.b * 2, b: self.a * o.b + self.b * o.a }
    }
}

/// Exact 3x3 matrix over Q(sqrt 2), row-major.
pub type Mat3 = [[Q2; 3]; 3];

/// The two rotation matrices, exactly.
pub fn rotation_matrices() -> (Mat3, Mat3) {
    let third = Rat::new(1, 3);
    let two_thirds = Rat::new(2, 3);
    let o = Q2::zero();
    let one = Q2::rational(Rat::from_integer(1));
    let c = Q2::rational(third);
    let s = Q2::root2(two_thirds);
    let ns = Q2::root2(-two_thirds);
    // Rotation about the x-axis.
    let a: Mat3 = [[one, o, o], [o, c, ns], [o, s, c]];
    // Rotation about the z-axis.
    let b: Mat3 = [[c, ns, o], [s, c, o], [o, o, one]];
    (a, b)
}

pub fn mat3_mul_vec(m: &Mat3, v: &[Q2; 3]) -> [Q2; 3] {
    [0, 1, 2].map(|i| m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2])
}

pub fn mat3_transpose(m: &Mat3) -> Mat3 {
    [0, 1, 2].map(|i| [0, 1, 2].map(|j| m[j][i]))
}

pub fn mat3_mul(x: &Mat3, y: &Mat3) -> Mat3 {
    [0, 1, 2].map(|i| [0, 1, 2].map(|j| x[i][0] * y[0][j] + x[i][1] * y[1][j] + x[i][2] * y[2][j]))
}

/// Evaluate a word on e_1 through the exact rational matrices.
pub fn evaluate_word_matrices(w: &Word) -> [Q2; 3] {
    let (a, b) = rotation_matrices();
    let mut v = [Q2::rational(Rat::from_integer(1)), Q2::zero(), Q2::zero()];
    for &letter in w.0.iter().rev() {
        let m = match letter {
            Letter::A => a,
            Letter::AInv => mat3_transpose(&a),
            Letter::B => b,
            Letter::BInv => mat3_transpose(&b),
        };
        v = mat3_mul_vec(&m, &v);
    }
    v
}

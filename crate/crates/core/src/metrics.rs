//! Exact expansion and Cheeger constants by exhaustive subset scans,
//! plus the conversion arithmetic between the three expander notions.
//!
//! Everything here is exact rational arithmetic; no floating point.
//! Subsets are enumerated in Gray-code order with the boundary size,
//! cut size and subset size maintained incrementally, which keeps
//! n = 24 feasible.

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Graph};
use crate::num::Rat;

/// Hard cap on exhaustive subset scans: 2^24 subsets.
pub const SCAN_LIMIT: usize = 24;

/// Which defining inequality a certificate talks about.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpansionKind {
    Expander,
    Fixed,
    Bi,
}

/// How a constant was established.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// Every admissible subset was checked.
    Exhaustive { subsets_checked: u64 },
    /// A subset violating the inequality for the claimed constant
    /// (used for disconnected graphs, where the constant is 0).
    Violator(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionCertificate {
    pub kind: ExpansionKind,
    pub constant: Rat,
    pub witness: Witness,
    /// A subset attaining the constant, when the scan ran.
    pub tight_subset: Option<Vec<usize>>,
}

/// Gray-code scan over every nonempty subset of `0..n`.
/// The callback receives `(mask, |A|, |boundary(A)|, |E(A, V-A)|)`.
pub(crate) fn scan_subsets(g: &Graph, mut f: impl FnMut(u32, usize, usize, usize)) {
    let n = g.n();
    assert!(n <= SCAN_LIMIT);
    let adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).collect()).collect();
    let deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut in_a = vec![false; n];
    let mut cover = vec![0usize; n]; // neighbours in A, for every vertex
    let mut size = 0usize;
    let mut boundary = 0usize;
    let mut crossing = 0usize;
    let mut mask = 0u32;

    for i in 1u32..(1u32 << n) {
        let v = i.trailing_zeros() as usize;
        if !in_a[v] {
            in_a[v] = true;
            mask |= 1 << v;
            size += 1;
            crossing = crossing + deg[v] - 2 * cover[v];
            if cover[v] > 0 {
                boundary -= 1;
            }
            for &u in &adj[v] {
                cover[u] += 1;
                if !in_a[u] && cover[u] == 1 {
                    boundary += 1;
                }
            }
        } else {
            in_a[v] = false;
            mask &= !(1 << v);
            size -= 1;
            for &u in &adj[v] {
                cover[u] -= 1;
                if !in_a[u] && cover[u] == 0 {
                    boundary -= 1;
                }
            }
            if cover[v] > 0 {
                boundary += 1;
            }
            crossing = crossing + 2 * cover[v] - deg[v];
        }
        f(mask, size, boundary, crossing);
    }
}

/// Gray-code scan over nonempty input subsets of a bipartite graph.
/// The callback receives `(mask, |A|, |boundary(A)|)`.
pub(crate) fn scan_input_subsets(b: &BipartiteGraph, mut f: impl FnMut(u32, usize, usize)) {
    let n = b.n_inputs();
    assert!(n <= SCAN_LIMIT);
    let adj: Vec<Vec<usize>> = (0..n).map(|u| b.input_neighbors(u).collect()).collect();
    let mut cover = vec![0usize; b.n_outputs()];
    let mut size = 0usize;
    let mut boundary = 0usize;
    let mut mask = 0u32;
    let mut in_a = vec![false; n];

    for i in 1u32..(1u32 << n) {
        let u = i.trailing_zeros() as usize;
        if !in_a[u] {
            in_a[u] = true;
            mask |= 1 << u;
            size += 1;
            for &v in &adj[u] {
                cover[v] += 1;
                if cover[v] == 1 {
                    boundary += 1;
                }
            }
        } else {
            in_a[u] = false;
            mask &= !(1 << u);
            size -= 1;
            for &v in &adj[u] {
                cover[v] -= 1;
                if cover[v] == 0 {
                    boundary -= 1;
                }
            }
        }
        f(mask, size, boundary);
    }
}

fn mask_to_vec(mask: u32) -> Vec<usize> {
    (0..32).filter(|&i| mask & (1 << i) != 0).collect()
}

/// Running minimum of exact fractions compared by cross-multiplication.
struct MinFraction {
    num: i64,
    den: i64,
    arg: u32,
}

impl MinFraction {
    fn new() -> Self {
        MinFraction { num: 0, den: 0, arg: 0 }
    }

    fn offer(&mut self, num: i64, den: i64, arg: u32) {
        debug_assert!(den > 0);
        if self.den == 0 || num * self.den < self.num * den {
            self.num = num;
            self.den = den;
            self.arg = arg;
        }
    }

    fn seen_any(&self) -> bool {
        self.den != 0
    }

    fn value(&self) -> Rat {
        Rat::new(self.num, self.den)
    }
}

fn check_size(n: usize) -> Result<()> {
    if n > SCAN_LIMIT {
        return Err(Error::TooLarge { n, max: SCAN_LIMIT });
    }
    if n < 2 {
        return Err(Error::Precondition(format!("need at least 2 vertices, got {n}")));
    }
    Ok(())
}

fn disconnected_certificate(g: &Graph, kind: ExpansionKind) -> Option<ExpansionCertificate> {
    if g.is_connected() {
        return None;
    }
    let comp = g
        .components()
        .into_iter()
        .min_by_key(|c| c.len())
        .expect("disconnected graph has components");
    Some(ExpansionCertificate {
        kind,
        constant: Rat::from_integer(0),
        witness: Witness::Violator(comp),
        tight_subset: None,
    })
}

/// Largest c with |boundary(A)| >= c (1 - |A|/n) |A| for all subsets
/// with |A| <= n/2: the exact minimum of |boundary(A)| n / ((n-|A|)|A|).
pub fn expander_constant(g: &Graph) -> Result<ExpansionCertificate> {
    check_size(g.n())?;
    if let Some(c) = disconnected_certificate(g, ExpansionKind::Expander) {
        return Ok(c);
    }
    let n = g.n() as i64;
    let mut min = MinFraction::new();
    let mut checked = 0u64;
    scan_subsets(g, |mask, size, boundary, _| {
        if 2 * size <= g.n() {
            checked += 1;
            let s = size as i64;
            min.offer(boundary as i64 * n, (n - s) * s, mask);
        }
    });
    debug_assert!(min.seen_any());
    Ok(ExpansionCertificate {
        kind: ExpansionKind::Expander,
        constant: min.value(),
        witness: Witness::Exhaustive { subsets_checked: checked },
        tight_subset: Some(mask_to_vec(min.arg)),
    })
}

/// Exact minimum of |boundary(A)| / |A| over 0 < |A| <= n/2.
pub fn fixed_expander_constant(g: &Graph) -> Result<ExpansionCertificate> {
    check_size(g.n())?;
    if let Some(c) = disconnected_certificate(g, ExpansionKind::Fixed) {
        return Ok(c);
    }
    let mut min = MinFraction::new();
    let mut checked = 0u64;
    scan_subsets(g, |mask, size, boundary, _| {
        if 2 * size <= g.n() {
            checked += 1;
            min.offer(boundary as i64, size as i64, mask);
        }
    });
    Ok(ExpansionCertificate {
        kind: ExpansionKind::Fixed,
        constant: min.value(),
        witness: Witness::Exhaustive { subsets_checked: checked },
        tight_subset: Some(mask_to_vec(min.arg)),
    })
}

/// Exact minimum of (|boundary(A)| - |A|) / |A| over input subsets with
/// 0 < |A| <= n/2.  May be negative.
pub fn bi_expander_constant(b: &BipartiteGraph) -> Result<ExpansionCertificate> {
    let n = b.n_inputs();
    if n != b.n_outputs() {
        return Err(Error::PartMismatch { n_inputs: n, n_outputs: b.n_outputs() });
    }
    check_size(n)?;
    let mut min = MinFraction::new();
    let mut checked = 0u64;
    scan_input_subsets(b, |mask, size, boundary| {
        if 2 * size <= n {
            checked += 1;
            min.offer(boundary as i64 - size as i64, size as i64, mask);
        }
    });
    Ok(ExpansionCertificate {
        kind: ExpansionKind::Bi,
        constant: min.value(),
        witness: Witness::Exhaustive { subsets_checked: checked },
        tight_subset: Some(mask_to_vec(min.arg)),
    })
}

/// A Cheeger minimiser: the constant and a subset attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheegerCut {
    pub value: Rat,
    pub cut: Vec<usize>,
}

/// h(X) = min over cuts of |E(A, B)| / min(|A|, |B|).
pub fn cheeger_h(g: &Graph) -> Result<CheegerCut> {
    check_size(g.n())?;
    let n = g.n();
    let mut min = MinFraction::new();
    scan_subsets(g, |mask, size, _, crossing| {
        if size < n {
            min.offer(crossing as i64, size.min(n - size) as i64, mask);
        }
    });
    Ok(CheegerCut { value: min.value(), cut: mask_to_vec(min.arg) })
}

/// h'(X) = min over cuts of |E(A, B)| (1/|A| + 1/|B|).
pub fn cheeger_h_prime(g: &Graph) -> Result<CheegerCut> {
    check_size(g.n())?;
    let n = g.n();
    let mut min = MinFraction::new();
    scan_subsets(g, |mask, size, _, crossing| {
        if size < n {
            let a = size as i64;
            let b = (n - size) as i64;
            min.offer(crossing as i64 * (a + b), a * b, mask);
        }
    });
    Ok(CheegerCut { value: min.value(), cut: mask_to_vec(min.arg) })
}

/// Conversion arithmetic between expander notions:
/// expander -> fixed is c/2, fixed -> expander is c/k.
pub fn convert_constant(
    from: ExpansionKind,
    to: ExpansionKind,
    _n: usize,
    k: usize,
    c: Rat,
) -> Result<Rat> {
    use ExpansionKind::*;
    match (from, to) {
        (Expander, Fixed) => Ok(c / 2),
        (Fixed, Expander) => {
            if k < 1 {
                return Err(Error::Precondition("degree k must be at least 1".into()));
            }
            Ok(c / k as i64)
        }
        (Expander, Expander) | (Fixed, Fixed) | (Bi, Bi) => Ok(c),
        (from, to) => Err(Error::Unsupported(format!("no conversion from {from:?} to {to:?}"))),
    }
}

//! Countability bijections and the rational interval basis of the real line.
//!
//! Open subsets of ℝ are only represented as finite unions of open intervals
//! with rational endpoints, which is enough to build connected components and
//! second-countability witnesses exactly.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::xreal::{Rational, XReal};

pub type Natural = BigUint;

/// Cantor pairing `(a, b) ↦ (a + b)(a + b + 1)/2 + b`.
pub fn pair_encode(a: &Natural, b: &Natural) -> Natural {
    let w = a + b;
    let t = (&w * (&w + 1u32)) >> 1;
    t + b
}

/// Inverse of [`pair_encode`].
pub fn pair_decode(n: &Natural) -> (Natural, Natural) {
    let s: Natural = (n << 3u32) + 1u32;
    let w = (s.sqrt() - 1u32) >> 1;
    let t = (&w * (&w + 1u32)) >> 1;
    let b = n - t;
    let a = &w - &b;
    (a, b)
}

/// Zig-zag `0, -1, 1, -2, 2, …`.
pub fn nat_to_int(n: &Natural) -> BigInt {
    if n.is_even() {
        BigInt::from_biguint(Sign::Plus, n >> 1)
    } else {
        -BigInt::from_biguint(Sign::Plus, (n + 1u32) >> 1)
    }
}

pub fn int_to_nat(z: &BigInt) -> Natural {
    let mag = z.magnitude();
    if z.is_negative() {
        (mag << 1) - 1u32
    } else {
        mag << 1
    }
}

/// Positive rational at position `k ≥ 1` of the Calkin–Wilf sequence.
fn calkin_wilf(k: &Natural) -> (Natural, Natural) {
    debug_assert!(!k.is_zero());
    let (mut a, mut b) = (Natural::one(), Natural::one());
    let mut i = k.bits().saturating_sub(1);
    while i > 0 {
        let bit = k.bit(i - 1);
        let mut run = 0u32;
        while i > 0 && k.bit(i - 1) == bit {
            run += 1;
            i -= 1;
        }
        if bit {
            a += &b * run;
        } else {
            b += &a * run;
        }
    }
    (a, b)
}

/// Position of the reduced fraction `p/q > 0` in the Calkin–Wilf sequence.
///
/// The index has as many bits as the sum of the continued-fraction terms of
/// `p/q`, so `1/n` lands near `2^n`.
fn calkin_wilf_index(p: &Natural, q: &Natural) -> Natural {
    let (mut p, mut q) = (p.clone(), q.clone());
    // runs of (bit, length) from the leaf up to the root
    let mut runs: Vec<(bool, u64)> = Vec::new();
    while !(p.is_one() && q.is_one()) {
        if p < q {
            let c = (&q - 1u32) / &p;
            q -= &c * &p;
            runs.push((false, u64::try_from(&c).expect("run length fits in u64")));
        } else {
            let c = (&p - 1u32) / &q;
            p -= &c * &q;
            runs.push((true, u64::try_from(&c).expect("run length fits in u64")));
        }
    }
    let mut k = Natural::one();
    for (bit, len) in runs.into_iter().rev() {
        k <<= len;
        if bit {
            k += (Natural::one() << len) - 1u32;
        }
    }
    k
}

/// `0 ↦ 0`, odd `2k - 1 ↦ cw(k)`, even `2k ↦ -cw(k)`.
pub fn nat_to_q(n: &Natural) -> Rational {
    if n.is_zero() {
        return Rational::zero();
    }
    let k = (n + 1u32) >> 1;
    let (a, b) = calkin_wilf(&k);
    let q = Rational::new(BigInt::from(a), BigInt::from(b));
    if n.is_odd() {
        q
    } else {
        -q
    }
}

pub fn q_to_nat(q: &Rational) -> Natural {
    if q.is_zero() {
        return Natural::zero();
    }
    let k = calkin_wilf_index(q.numer().magnitude(), q.denom().magnitude());
    if q.is_positive() {
        (k << 1) - 1u32
    } else {
        k << 1
    }
}

pub fn nat_to_q2(n: &Natural) -> (Rational, Rational) {
    let (i, j) = pair_decode(n);
    (nat_to_q(&i), nat_to_q(&j))
}

pub fn q2_to_nat(q: &(Rational, Rational)) -> Natural {
    pair_encode(&q_to_nat(&q.0), &q_to_nat(&q.1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IntervalKind {
    Open,
    Closed,
    ClosedOpen,
}

/// An interval with rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatInterval {
    pub lo: Rational,
    pub hi: Rational,
    pub kind: IntervalKind,
}

impl RatInterval {
    pub fn open(lo: Rational, hi: Rational) -> Self {
        RatInterval {
            lo,
            hi,
            kind: IntervalKind::Open,
        }
    }

    pub fn closed(lo: Rational, hi: Rational) -> Self {
        RatInterval {
            lo,
            hi,
            kind: IntervalKind::Closed,
        }
    }

    pub fn closed_open(lo: Rational, hi: Rational) -> Self {
        RatInterval {
            lo,
            hi,
            kind: IntervalKind::ClosedOpen,
        }
    }

    pub fn is_empty(&self) -> bool {
        match self.kind {
            IntervalKind::Closed => self.lo > self.hi,
            IntervalKind::Open | IntervalKind::ClosedOpen => self.lo >= self.hi,
        }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        match self.kind {
            IntervalKind::Open => &self.lo < x && x < &self.hi,
            IntervalKind::Closed => &self.lo <= x && x <= &self.hi,
            IntervalKind::ClosedOpen => &self.lo <= x && x < &self.hi,
        }
    }

    /// Set inclusion, decided on endpoints.
    pub fn is_subset_of(&self, other: &RatInterval) -> bool {
        if self.is_empty() {
            return true;
        }
        if other.is_empty() {
            return false;
        }
        let lo_ok = match (self.kind, other.kind) {
            (_, IntervalKind::Closed | IntervalKind::ClosedOpen) => self.lo >= other.lo,
            (IntervalKind::Open, IntervalKind::Open) => self.lo >= other.lo,
            (_, IntervalKind::Open) => self.lo > other.lo,
        };
        let hi_ok = match (self.kind, other.kind) {
            (_, IntervalKind::Closed) => self.hi <= other.hi,
            (IntervalKind::Closed, _) => self.hi < other.hi,
            (_, _) => self.hi <= other.hi,
        };
        lo_ok && hi_ok
    }
}

/// `n ↦ (q1, q2)` as an open interval, where `(q1, q2) = nat_to_q2(n)`.
pub fn topo_basis_r(n: &Natural) -> RatInterval {
    let (lo, hi) = nat_to_q2(n);
    RatInterval::open(lo, hi)
}

/// Open box of ℝ² indexed through [`pair_decode`].
pub fn topo_basis_r2(n: &Natural) -> (RatInterval, RatInterval) {
    let (i, j) = pair_decode(n);
    (topo_basis_r(&i), topo_basis_r(&j))
}

/// A finite union of open intervals with rational endpoints.
#[derive(Debug, Clone, Default)]
pub struct FiniteOpenUnion {
    parts: Vec<(Rational, Rational)>,
}

impl FiniteOpenUnion {
    pub fn new(parts: Vec<(Rational, Rational)>) -> Self {
        FiniteOpenUnion { parts }
    }

    /// Fails with [`Error::InvalidInterval`] if some part is not open.
    pub fn from_intervals(parts: &[RatInterval]) -> Result<Self> {
        parts
            .iter()
            .map(|iv| match iv.kind {
                IntervalKind::Open => Ok((iv.lo.clone(), iv.hi.clone())),
                _ => Err(Error::InvalidInterval),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    pub fn parts(&self) -> Vec<RatInterval> {
        self.parts
            .iter()
            .map(|(lo, hi)| RatInterval::open(lo.clone(), hi.clone()))
            .collect()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.parts.iter().any(|(lo, hi)| lo < x && x < hi)
    }

    /// Maximal disjoint components sorted by lower end. Intervals sharing
    /// only an endpoint stay separate since that endpoint is not covered.
    pub fn components(&self) -> Vec<RatInterval> {
        let mut live: Vec<&(Rational, Rational)> =
            self.parts.iter().filter(|(lo, hi)| lo < hi).collect();
        live.sort();
        let mut out: Vec<(Rational, Rational)> = Vec::new();
        for (lo, hi) in live {
            match out.last_mut() {
                Some((_, top)) if lo < top => {
                    if hi > top {
                        *top = hi.clone();
                    }
                }
                _ => out.push((lo.clone(), hi.clone())),
            }
        }
        out.into_iter()
            .map(|(lo, hi)| RatInterval::open(lo, hi))
            .collect()
    }

    pub fn normalize(&self) -> FiniteOpenUnion {
        FiniteOpenUnion {
            parts: self
                .components()
                .into_iter()
                .map(|iv| (iv.lo, iv.hi))
                .collect(),
        }
    }
}

impl PartialEq for FiniteOpenUnion {
    fn eq(&self, other: &Self) -> bool {
        self.components() == other.components()
    }
}

impl Eq for FiniteOpenUnion {}

/// Bounds of the connected component of `a` containing `x`, or `(x, x)`
/// when `x ∉ a`.
pub fn connected_component(a: &FiniteOpenUnion, x: &Rational) -> (XReal, XReal) {
    a.components()
        .into_iter()
        .find(|c| c.contains(x))
        .map(|c| (XReal::Finite(c.lo), XReal::Finite(c.hi)))
        .unwrap_or_else(|| (XReal::Finite(x.clone()), XReal::Finite(x.clone())))
}

/// Basis indices whose union is exactly `a`.
pub fn second_countable_witness(a: &FiniteOpenUnion) -> BTreeSet<Natural> {
    a.components()
        .into_iter()
        .map(|c| q2_to_nat(&(c.lo, c.hi)))
        .collect()
}

/// Union of the basis intervals named by `indices`.
pub fn union_of_basis(indices: &BTreeSet<Natural>) -> FiniteOpenUnion {
    FiniteOpenUnion::new(indices.iter().map(nat_to_q2).collect())
}

/// `(a - 1/k, b + 1/k)`; intersecting over all `k ≥ 1` gives `[a, b]`.
pub fn cc_as_nested_open(a: &Rational, b: &Rational, k: u64) -> Result<RatInterval> {
    if a > b {
        return Err(Error::InvalidInterval);
    }
    if k == 0 {
        return Err(Error::InvalidIndex);
    }
    let eps = Rational::new(BigInt::one(), BigInt::from(k));
    Ok(RatInterval::open(a - &eps, b + &eps))
}

//! Extended reals over exact rationals.
//!
//! Addition and multiplication are total: `+∞ + -∞ = 0` and
//! `0 · ±∞ = ±∞ · 0 = 0`. With mixed infinities addition is not
//! associative, so [`sum_xreal_list`] fixes a right-fold order.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// An element of `ℝ ∪ {-∞, +∞}`.
///
/// The derived order follows variant order, so `NegInf < Finite(q) < PosInf`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum XReal {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl XReal {
    pub fn zero() -> Self {
        XReal::Finite(Rational::zero())
    }

    pub fn one() -> Self {
        XReal::Finite(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        XReal::Finite(Rational::from_integer(BigInt::from(n)))
    }

    /// `num/den` reduced. Panics when `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        XReal::Finite(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, XReal::Finite(_))
    }

    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            XReal::Finite(q) => Some(q),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, XReal::Finite(q) if q.is_zero())
    }

    pub fn is_nonneg(&self) -> bool {
        match self {
            XReal::NegInf => false,
            XReal::Finite(q) => !q.is_negative(),
            XReal::PosInf => true,
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            XReal::NegInf => false,
            XReal::Finite(q) => q.is_positive(),
            XReal::PosInf => true,
        }
    }

    fn sign(&self) -> Ordering {
        match self {
            XReal::NegInf => Ordering::Less,
            XReal::Finite(q) => q.cmp(&Rational::zero()),
            XReal::PosInf => Ordering::Greater,
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            XReal::NegInf => XReal::PosInf,
            XReal::Finite(q) => XReal::Finite(-q),
            XReal::PosInf => XReal::NegInf,
        }
    }
}

impl From<Rational> for XReal {
    fn from(q: Rational) -> Self {
        XReal::Finite(q)
    }
}

impl From<i64> for XReal {
    fn from(n: i64) -> Self {
        XReal::from_int(n)
    }
}

/// Total addition. `+∞ + -∞` is `0` in either order.
pub fn xadd(a: &XReal, b: &XReal) -> XReal {
    use XReal::*;
    match (a, b) {
        (Finite(x), Finite(y)) => Finite(x + y),
        (PosInf, NegInf) | (NegInf, PosInf) => XReal::zero(),
        (PosInf, _) | (_, PosInf) => PosInf,
        (NegInf, _) | (_, NegInf) => NegInf,
    }
}

/// Whether `a + b` is a genuine sum, i.e. not `∞ - ∞`.
pub fn xadd_legal(a: &XReal, b: &XReal) -> bool {
    !matches!(
        (a, b),
        (XReal::PosInf, XReal::NegInf) | (XReal::NegInf, XReal::PosInf)
    )
}

/// Total multiplication with `0 · ±∞ = 0` and the usual sign rule otherwise.
pub fn xmul(a: &XReal, b: &XReal) -> XReal {
    if let (XReal::Finite(x), XReal::Finite(y)) = (a, b) {
        return XReal::Finite(x * y);
    }
    if a.is_zero() || b.is_zero() {
        XReal::zero()
    } else if a.sign() == b.sign() {
        XReal::PosInf
    } else {
        XReal::NegInf
    }
}

impl Add for &XReal {
    type Output = XReal;
    fn add(self, rhs: &XReal) -> XReal {
        xadd(self, rhs)
    }
}

impl Add for XReal {
    type Output = XReal;
    fn add(self, rhs: XReal) -> XReal {
        xadd(&self, &rhs)
    }
}

impl Mul for &XReal {
    type Output = XReal;
    fn mul(self, rhs: &XReal) -> XReal {
        xmul(self, rhs)
    }
}

impl Mul for XReal {
    type Output = XReal;
    fn mul(self, rhs: XReal) -> XReal {
        xmul(&self, &rhs)
    }
}

/// Right fold of [`xadd`] seeded with `0`: `l0 + (l1 + (... + (ln + 0)))`.
pub fn sum_xreal_list(l: &[XReal]) -> XReal {
    l.iter().rev().fold(XReal::zero(), |acc, x| xadd(x, &acc))
}

/// [`sum_xreal_list`] of the image of `l` under `f`.
pub fn sum_xreal_map<T, F>(l: &[T], f: F) -> XReal
where
    F: Fn(&T) -> XReal,
{
    let image: Vec<XReal> = l.iter().map(f).collect();
    sum_xreal_list(&image)
}

/// Running sums `S_0 = t_0`, `S_n = t_n + S_{n-1}`.
pub fn partial_sums(terms: &[XReal]) -> Vec<XReal> {
    let mut out: Vec<XReal> = Vec::with_capacity(terms.len());
    for t in terms {
        let next = match out.last() {
            Some(prev) => xadd(t, prev),
            None => t.clone(),
        };
        out.push(next);
    }
    out
}

/// How an ℕ-indexed sequence behaves past its stored prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tail {
    /// Every later term repeats the last prefix element.
    ConstantAfterPrefix,
    /// Nothing is known past the prefix.
    Undefined,
}

impl fmt::Display for Tail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tail::ConstantAfterPrefix => f.write_str("constant"),
            Tail::Undefined => f.write_str("undefined"),
        }
    }
}

/// Finite surrogate for a sequence indexed by ℕ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedSeq<T> {
    prefix: Vec<T>,
    tail: Tail,
}

impl<T> TaggedSeq<T> {
    /// A sequence equal to `prefix` and then constant at its last element.
    pub fn constant_after(prefix: Vec<T>) -> Result<Self> {
        if prefix.is_empty() {
            return Err(Error::EmptyPrefix);
        }
        Ok(TaggedSeq {
            prefix,
            tail: Tail::ConstantAfterPrefix,
        })
    }

    pub fn undefined(prefix: Vec<T>) -> Self {
        TaggedSeq {
            prefix,
            tail: Tail::Undefined,
        }
    }

    pub fn new(prefix: Vec<T>, tail: Tail) -> Result<Self> {
        match tail {
            Tail::ConstantAfterPrefix => Self::constant_after(prefix),
            Tail::Undefined => Ok(Self::undefined(prefix)),
        }
    }

    pub fn prefix(&self) -> &[T] {
        &self.prefix
    }

    pub fn tail(&self) -> Tail {
        self.tail
    }

    pub fn len(&self) -> usize {
        self.prefix.len()
    }

    pub fn is_empty(&self) -> bool {
        self.prefix.is_empty()
    }

    /// Term `n`, or `None` past the prefix of an undefined-tail sequence.
    pub fn term(&self, n: usize) -> Option<&T> {
        match self.prefix.get(n) {
            Some(t) => Some(t),
            None if self.tail == Tail::ConstantAfterPrefix => self.prefix.last(),
            None => None,
        }
    }

    /// The repeated value of a constant-after-prefix sequence.
    pub fn limit(&self) -> Result<&T> {
        match self.tail {
            Tail::ConstantAfterPrefix => self.prefix.last().ok_or(Error::EmptyPrefix),
            Tail::Undefined => Err(Error::UndefinedTail),
        }
    }

    pub fn require_defined(&self) -> Result<()> {
        self.limit().map(|_| ())
    }

    pub fn map<U, F: FnMut(&T) -> U>(&self, f: F) -> TaggedSeq<U> {
        TaggedSeq {
            prefix: self.prefix.iter().map(f).collect(),
            tail: self.tail,
        }
    }

    pub fn try_map<U, F: FnMut(&T) -> Result<U>>(&self, f: F) -> Result<TaggedSeq<U>> {
        Ok(TaggedSeq {
            prefix: self.prefix.iter().map(f).collect::<Result<_>>()?,
            tail: self.tail,
        })
    }
}

/// Supremum of an eventually-constant sequence: the maximum of its prefix.
pub fn sup_seq(s: &TaggedSeq<XReal>) -> Result<XReal> {
    s.require_defined()?;
    Ok(s.prefix().iter().max().cloned().expect("non-empty prefix"))
}

/// `sup_m inf_{n ≥ m} s(n)`, evaluated over the suffixes of the prefix.
pub fn liminf_seq(s: &TaggedSeq<XReal>) -> Result<XReal> {
    s.require_defined()?;
    let p = s.prefix();
    let mut infima = Vec::with_capacity(p.len());
    let mut running = s.limit()?.clone();
    for x in p.iter().rev() {
        running = running.min(x.clone());
        infima.push(running.clone());
    }
    Ok(infima.into_iter().max().expect("non-empty prefix"))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid number literal `{literal}`: {reason}")]
pub struct ParseXRealError {
    pub literal: String,
    pub reason: &'static str,
}

fn parse_err(literal: &str, reason: &'static str) -> ParseXRealError {
    ParseXRealError {
        literal: literal.to_string(),
        reason,
    }
}

fn parse_digits(s: &str, whole: &str) -> std::result::Result<BigInt, ParseXRealError> {
    if s.is_empty() {
        return Err(parse_err(whole, "missing digits"));
    }
    if !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(parse_err(whole, "expected decimal digits"));
    }
    BigInt::from_str(s).map_err(|_| parse_err(whole, "expected decimal digits"))
}

/// Parses `p` or `p/q` with an optional leading `-` and `q > 0`.
pub fn parse_rational(s: &str) -> std::result::Result<Rational, ParseXRealError> {
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (parse_digits(n, s)?, parse_digits(d, s)?),
        None => (parse_digits(body, s)?, BigInt::one()),
    };
    if den.is_zero() {
        return Err(parse_err(s, "zero denominator"));
    }
    let q = Rational::new(num, den);
    Ok(if negative { -q } else { q })
}

impl FromStr for XReal {
    type Err = ParseXRealError;

    /// Accepts `inf`, `+inf`, `-inf`, `p` and `p/q`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "inf" | "+inf" => Ok(XReal::PosInf),
            "-inf" => Ok(XReal::NegInf),
            _ => parse_rational(s).map(XReal::Finite),
        }
    }
}

/// Formats a rational as `p` or `p/q`.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for XReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            XReal::NegInf => f.write_str("-inf"),
            XReal::Finite(q) => f.write_str(&format_rational(q)),
            XReal::PosInf => f.write_str("inf"),
        }
    }
}

//! Oracles shared by the integration and acceptance tests.
//!
//! Everything here works on bitmask subsets of `{0, …, n-1}` and a private
//! nonnegative extended-rational type, so the expected values never go
//! through the library's own σ-algebra, measure or arithmetic code.

#![allow(dead_code)]

use lebesgue::measure::Measure;
use lebesgue::sigma::{generate_sigma, FiniteSpace, PointFn, SigmaAlgebra, Space, SubsetMask};
use lebesgue::{Rational, XReal};
use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;

/// A value in `[0, +∞]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ext {
    Fin(Rational),
    Inf,
}

impl Ext {
    pub fn int(n: i64) -> Ext {
        Ext::Fin(Rational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(n: i64, d: i64) -> Ext {
        Ext::Fin(Rational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Ext::Fin(q) if q.is_zero())
    }

    pub fn plus(&self, other: &Ext) -> Ext {
        match (self, other) {
            (Ext::Fin(a), Ext::Fin(b)) => Ext::Fin(a + b),
            _ => Ext::Inf,
        }
    }

    /// Product with `0 · ∞ = 0`.
    pub fn times(&self, other: &Ext) -> Ext {
        if self.is_zero() || other.is_zero() {
            return Ext::int(0);
        }
        match (self, other) {
            (Ext::Fin(a), Ext::Fin(b)) => Ext::Fin(a * b),
            _ => Ext::Inf,
        }
    }

    pub fn le(&self, other: &Ext) -> bool {
        match (self, other) {
            (_, Ext::Inf) => true,
            (Ext::Inf, Ext::Fin(_)) => false,
            (Ext::Fin(a), Ext::Fin(b)) => a <= b,
        }
    }

    pub fn max(self, other: Ext) -> Ext {
        if self.le(&other) {
            other
        } else {
            self
        }
    }

    pub fn to_x(&self) -> XReal {
        match self {
            Ext::Fin(q) => XReal::Finite(q.clone()),
            Ext::Inf => XReal::PosInf,
        }
    }

    pub fn from_x(x: &XReal) -> Ext {
        match x {
            XReal::Finite(q) if q >= &Rational::zero() => Ext::Fin(q.clone()),
            XReal::PosInf => Ext::Inf,
            other => panic!("{other} is not in [0, +∞]"),
        }
    }
}

pub fn sum(values: impl IntoIterator<Item = Ext>) -> Ext {
    values.into_iter().fold(Ext::int(0), |acc, v| acc.plus(&v))
}

/// Atoms of the σ-algebra generated by `gens` on `n` points: points with the
/// same membership pattern, listed by smallest point.
pub fn atoms_of(n: usize, gens: &[u32]) -> Vec<u32> {
    let pattern = |x: usize| -> Vec<bool> { gens.iter().map(|g| g >> x & 1 == 1).collect() };
    let mut atoms: Vec<(Vec<bool>, u32)> = Vec::new();
    for x in 0..n {
        let p = pattern(x);
        match atoms.iter_mut().find(|(q, _)| *q == p) {
            Some((_, mask)) => *mask |= 1 << x,
            None => atoms.push((p, 1 << x)),
        }
    }
    atoms.into_iter().map(|(_, m)| m).collect()
}

/// A finite measure space described by bitmasks, with weights per atom.
#[derive(Debug, Clone)]
pub struct Case {
    pub n: usize,
    pub gens: Vec<u32>,
    pub atoms: Vec<u32>,
    pub weights: Vec<Ext>,
}

impl Case {
    pub fn new(n: usize, gens: Vec<u32>, weights_for: impl Fn(usize) -> Ext) -> Case {
        let atoms = atoms_of(n, &gens);
        let weights = (0..atoms.len()).map(weights_for).collect();
        Case { n, gens, atoms, weights }
    }

    pub fn full(&self) -> u32 {
        (1u32 << self.n) - 1
    }

    pub fn atom_index(&self, x: usize) -> usize {
        self.atoms.iter().position(|a| a >> x & 1 == 1).expect("atoms cover the space")
    }

    pub fn is_measurable(&self, set: u32) -> bool {
        self.atoms.iter().all(|&a| a & set == 0 || a & set == a)
    }

    /// `μ(set)` as the sum of the weights of the atoms inside it.
    pub fn measure(&self, set: u32) -> Ext {
        assert!(self.is_measurable(set));
        sum(self
            .atoms
            .iter()
            .zip(&self.weights)
            .filter(|(a, _)| *a & set != 0)
            .map(|(_, w)| w.clone()))
    }

    /// Σ_atoms value · weight for a function constant on atoms.
    pub fn integral(&self, per_point: &[Ext]) -> Ext {
        sum(self.atoms.iter().zip(&self.weights).map(|(&a, w)| {
            let x = a.trailing_zeros() as usize;
            per_point[x].times(w)
        }))
    }

    pub fn expand(&self, per_atom: &[Ext]) -> Vec<Ext> {
        (0..self.n).map(|x| per_atom[self.atom_index(x)].clone()).collect()
    }

    /// A random union of atoms.
    pub fn random_measurable<R: Rng>(&self, rng: &mut R) -> u32 {
        self.atoms.iter().filter(|_| rng.gen_bool(0.5)).fold(0, |acc, a| acc | a)
    }

    pub fn lib(&self) -> Lib {
        let space = FiniteSpace::of_size(self.n).unwrap();
        let gens: Vec<SubsetMask> = self.gens.iter().map(|&g| SubsetMask::from_word(&space, g as u64)).collect();
        let sa = generate_sigma(&space, &gens).unwrap();
        let per_point: Vec<XReal> = (0..self.n).map(|x| self.weights[self.atom_index(x)].to_x()).collect();
        let measure = Measure::weighted(&sa, &per_point).unwrap();
        Lib { space, sa, measure }
    }
}

/// The same case built with the library.
pub struct Lib {
    pub space: Space,
    pub sa: SigmaAlgebra,
    pub measure: Measure,
}

impl Lib {
    pub fn set(&self, mask: u32) -> SubsetMask {
        SubsetMask::from_word(&self.space, mask as u64)
    }

    pub fn func(&self, values: &[Ext]) -> PointFn {
        PointFn::new(&self.space, values.iter().map(Ext::to_x).collect()).unwrap()
    }
}

/// Zero, small integers, dyadics, other rationals and possibly `+∞`.
pub fn random_value<R: Rng>(rng: &mut R, allow_inf: bool) -> Ext {
    match rng.gen_range(0..10) {
        0 => Ext::int(0),
        1 if allow_inf => Ext::Inf,
        1..=3 => Ext::int(rng.gen_range(0..6)),
        4..=6 => Ext::ratio(rng.gen_range(0..40), 1 << rng.gen_range(0..5)),
        _ => Ext::ratio(rng.gen_range(0..30), rng.gen_range(1..10)),
    }
}

/// A random space of at most `max_n` points with up to four generators and
/// random weights, some infinite and some zero.
pub fn random_case<R: Rng>(rng: &mut R, max_n: usize) -> Case {
    let n = rng.gen_range(1..=max_n);
    let gens: Vec<u32> = (0..rng.gen_range(0..=4)).map(|_| rng.gen::<u32>() & ((1 << n) - 1)).collect();
    let atoms = atoms_of(n, &gens).len();
    let weights: Vec<Ext> = (0..atoms)
        .map(|_| if rng.gen_bool(0.15) { Ext::Inf } else { random_value(rng, false) })
        .collect();
    Case::new(n, gens, |i| weights[i].clone())
}

/// A random nonnegative function constant on the atoms of `case`.
pub fn random_fn<R: Rng>(rng: &mut R, case: &Case, allow_inf: bool) -> Vec<Ext> {
    let per_atom: Vec<Ext> = case.atoms.iter().map(|_| random_value(rng, allow_inf)).collect();
    case.expand(&per_atom)
}

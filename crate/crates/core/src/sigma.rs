//! Finite measurable spaces.
//!
//! A σ-algebra on a finite universe is stored as its atom partition: two
//! points share an atom iff no generator separates them, and the measurable
//! sets are exactly the unions of atoms. Countable unions collapse to finite
//! ones, so this closure is exact.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::xreal::{xadd, xadd_legal, xmul, XReal};

/// A non-empty ordered set of distinct point labels.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct FiniteSpace {
    labels: Vec<String>,
}

pub type Space = Arc<FiniteSpace>;

impl FiniteSpace {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Space> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::InvalidSpace("a space needs at least one point".into()));
        }
        let mut seen = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if seen.insert(l.as_str(), i).is_some() {
                return Err(Error::InvalidSpace(format!("duplicate label `{l}`")));
            }
        }
        Ok(Arc::new(FiniteSpace { labels }))
    }

    /// Points labelled `0`, `1`, …, `n - 1`.
    pub fn of_size(n: usize) -> Result<Space> {
        Self::new((0..n).map(|i| i.to_string()))
    }

    /// `E × F` with labels `(e,f)` in E-major lexicographic order.
    pub fn product(e: &FiniteSpace, f: &FiniteSpace) -> Space {
        let labels = e
            .labels
            .iter()
            .flat_map(|a| f.labels.iter().map(move |b| format!("({a},{b})")))
            .collect();
        Arc::new(FiniteSpace { labels })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }
}

fn same_space(a: &Space, b: &Space) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::SpaceMismatch)
    }
}

/// A subset of a [`FiniteSpace`] as one membership bit per point.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SubsetMask {
    space: Space,
    bits: Vec<bool>,
}

impl SubsetMask {
    pub fn empty(space: &Space) -> Self {
        SubsetMask {
            space: space.clone(),
            bits: vec![false; space.size()],
        }
    }

    pub fn full(space: &Space) -> Self {
        SubsetMask {
            space: space.clone(),
            bits: vec![true; space.size()],
        }
    }

    pub fn from_bits(space: &Space, bits: Vec<bool>) -> Result<Self> {
        if bits.len() != space.size() {
            return Err(Error::SpaceMismatch);
        }
        Ok(SubsetMask {
            space: space.clone(),
            bits,
        })
    }

    pub fn from_indices(space: &Space, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut bits = vec![false; space.size()];
        for i in indices {
            *bits.get_mut(i).ok_or(Error::PointOutOfRange(i))? = true;
        }
        Ok(SubsetMask {
            space: space.clone(),
            bits,
        })
    }

    pub fn from_labels<S: AsRef<str>>(space: &Space, labels: &[S]) -> Result<Self> {
        let idx = labels
            .iter()
            .map(|l| space.index_of(l.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::from_indices(space, idx)
    }

    /// Low bit of `word` is point 0. Points past bit 63 are left out.
    pub fn from_word(space: &Space, word: u64) -> Self {
        let bits = (0..space.size())
            .map(|i| i < 64 && (word >> i) & 1 == 1)
            .collect();
        SubsetMask {
            space: space.clone(),
            bits,
        }
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn contains(&self, i: usize) -> bool {
        self.bits.get(i).copied().unwrap_or(false)
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.bits.iter().any(|&b| b)
    }

    pub fn is_full(&self) -> bool {
        self.bits.iter().all(|&b| b)
    }

    fn zip_with(&self, other: &Self, op: impl Fn(bool, bool) -> bool) -> Result<Self> {
        same_space(&self.space, &other.space)?;
        Ok(SubsetMask {
            space: self.space.clone(),
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        })
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a && !b)
    }

    pub fn complement(&self) -> Self {
        SubsetMask {
            space: self.space.clone(),
            bits: self.bits.iter().map(|&b| !b).collect(),
        }
    }

    pub fn is_subset(&self, other: &Self) -> Result<bool> {
        Ok(self.difference(other)?.is_empty())
    }

    pub fn is_disjoint(&self, other: &Self) -> Result<bool> {
        Ok(self.intersection(other)?.is_empty())
    }

    pub fn labels(&self) -> Vec<&str> {
        self.indices()
            .map(|i| self.space.labels[i].as_str())
            .collect()
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.labels()).finish()
    }
}

/// Union of a list of masks over `space`.
pub fn union_all<'a>(space: &Space, masks: impl IntoIterator<Item = &'a SubsetMask>) -> Result<SubsetMask> {
    masks
        .into_iter()
        .try_fold(SubsetMask::empty(space), |acc, m| acc.union(m))
}

/// The σ-algebra generated by a family of subsets of a finite space.
#[derive(Debug, Clone)]
pub struct SigmaAlgebra {
    space: Space,
    generator: Vec<SubsetMask>,
    atom_of: Vec<usize>,
    atoms: Vec<SubsetMask>,
}

/// Smallest σ-algebra containing `generator`.
pub fn generate_sigma(space: &Space, generator: &[SubsetMask]) -> Result<SigmaAlgebra> {
    for g in generator {
        same_space(space, &g.space)?;
    }
    let mut signatures: HashMap<Vec<bool>, usize> = HashMap::new();
    let mut atom_of = Vec::with_capacity(space.size());
    let mut members: Vec<Vec<usize>> = Vec::new();
    for x in 0..space.size() {
        let sig: Vec<bool> = generator.iter().map(|g| g.bits[x]).collect();
        let next = signatures.len();
        let id = *signatures.entry(sig).or_insert(next);
        if id == members.len() {
            members.push(Vec::new());
        }
        members[id].push(x);
        atom_of.push(id);
    }
    let atoms = members
        .into_iter()
        .map(|pts| SubsetMask::from_indices(space, pts))
        .collect::<Result<_>>()?;
    Ok(SigmaAlgebra {
        space: space.clone(),
        generator: generator.to_vec(),
        atom_of,
        atoms,
    })
}

impl SigmaAlgebra {
    /// Generated by every singleton.
    pub fn discrete(space: &Space) -> SigmaAlgebra {
        let singletons: Vec<SubsetMask> = (0..space.size())
            .map(|i| SubsetMask::from_indices(space, [i]).expect("index in range"))
            .collect();
        generate_sigma(space, &singletons).expect("masks built on this space")
    }

    /// `{∅, E}`.
    pub fn trivial(space: &Space) -> SigmaAlgebra {
        generate_sigma(space, &[]).expect("empty generator")
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn generator(&self) -> &[SubsetMask] {
        &self.generator
    }

    /// Atoms ordered by their smallest point.
    pub fn atoms(&self) -> &[SubsetMask] {
        &self.atoms
    }

    pub fn atom_of(&self, point: usize) -> usize {
        self.atom_of[point]
    }

    pub fn num_atoms(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_discrete(&self) -> bool {
        self.atoms.len() == self.space.size()
    }

    pub fn check_space(&self, space: &Space) -> Result<()> {
        same_space(&self.space, space)
    }

    /// Whether `a` is a union of atoms.
    pub fn is_measurable(&self, a: &SubsetMask) -> Result<bool> {
        same_space(&self.space, &a.space)?;
        let mut state: Vec<Option<bool>> = vec![None; self.atoms.len()];
        for (x, &inside) in a.bits.iter().enumerate() {
            let slot = &mut state[self.atom_of[x]];
            match slot {
                None => *slot = Some(inside),
                Some(prev) if *prev != inside => return Ok(false),
                _ => {}
            }
        }
        Ok(true)
    }

    /// Union of the atoms selected by the low bits of `word`.
    pub fn member_from_atoms(&self, word: u64) -> SubsetMask {
        let bits = self
            .atom_of
            .iter()
            .map(|&a| a < 64 && (word >> a) & 1 == 1)
            .collect();
        SubsetMask {
            space: self.space.clone(),
            bits,
        }
    }

    /// Every measurable set, one per subset of the atoms. Only sensible for
    /// a few dozen atoms at most.
    pub fn members(&self) -> impl Iterator<Item = SubsetMask> + '_ {
        assert!(self.atoms.len() < 64, "too many atoms to enumerate");
        (0..1u64 << self.atoms.len()).map(move |w| self.member_from_atoms(w))
    }

    /// Whether `other` has the same atoms, i.e. both generate the same family.
    pub fn same_atoms(&self, other: &SigmaAlgebra) -> Result<bool> {
        same_space(&self.space, &other.space)?;
        let mut map: Vec<Option<usize>> = vec![None; self.atoms.len()];
        let mut back: Vec<Option<usize>> = vec![None; other.atoms.len()];
        for x in 0..self.space.size() {
            let (a, b) = (self.atom_of[x], other.atom_of[x]);
            match (map[a], back[b]) {
                (None, None) => {
                    map[a] = Some(b);
                    back[b] = Some(a);
                }
                (Some(mb), Some(ma)) if mb == b && ma == a => {}
                _ => return Ok(false),
            }
        }
        Ok(true)
    }

    /// Whether each generator is measurable for the other σ-algebra.
    pub fn generators_mutually_measurable(&self, other: &SigmaAlgebra) -> Result<bool> {
        for g in &self.generator {
            if !other.is_measurable(g)? {
                return Ok(false);
            }
        }
        for g in &other.generator {
            if !self.is_measurable(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl PartialEq for SigmaAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.same_atoms(other).unwrap_or(false)
    }
}

impl Eq for SigmaAlgebra {}

/// Whether two generated σ-algebras coincide.
pub fn sigma_equal_generated(sa1: &SigmaAlgebra, sa2: &SigmaAlgebra) -> Result<bool> {
    let by_atoms = sa1.same_atoms(sa2)?;
    debug_assert_eq!(by_atoms, sa1.generators_mutually_measurable(sa2)?);
    Ok(by_atoms)
}

/// `AE × AF` as a mask over `E × F`.
pub fn product_mask(product: &Space, ae: &SubsetMask, af: &SubsetMask) -> Result<SubsetMask> {
    let (ne, nf) = (ae.space.size(), af.space.size());
    if product.size() != ne * nf {
        return Err(Error::SpaceMismatch);
    }
    let bits = (0..ne)
        .flat_map(|i| (0..nf).map(move |j| (i, j)))
        .map(|(i, j)| ae.bits[i] && af.bits[j])
        .collect();
    SubsetMask::from_bits(product, bits)
}

/// Products `AE × AF` with `AE ∈ genE ∪ {E}` and `AF ∈ genF ∪ {F}`.
///
/// Adjoining the full sets matters: without them a set such as `{0} × F`
/// need not be in the generated σ-algebra.
pub fn product_generator(
    space_e: &Space,
    gen_e: &[SubsetMask],
    space_f: &Space,
    gen_f: &[SubsetMask],
) -> Result<(Space, Vec<SubsetMask>)> {
    for g in gen_e {
        same_space(space_e, &g.space)?;
    }
    for g in gen_f {
        same_space(space_f, &g.space)?;
    }
    let product = FiniteSpace::product(space_e, space_f);
    let left: Vec<SubsetMask> = gen_e
        .iter()
        .cloned()
        .chain(std::iter::once(SubsetMask::full(space_e)))
        .collect();
    let right: Vec<SubsetMask> = gen_f
        .iter()
        .cloned()
        .chain(std::iter::once(SubsetMask::full(space_f)))
        .collect();
    let mut out = Vec::with_capacity(left.len() * right.len());
    for ae in &left {
        for af in &right {
            out.push(product_mask(&product, ae, af)?);
        }
    }
    Ok((product, out))
}

/// An extended-real valued function on a finite space.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointFn {
    space: Space,
    values: Vec<XReal>,
}

impl fmt::Debug for PointFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.values.iter().map(|v| v.to_string()))
            .finish()
    }
}

impl PointFn {
    pub fn new(space: &Space, values: Vec<XReal>) -> Result<Self> {
        if values.len() != space.size() {
            return Err(Error::SpaceMismatch);
        }
        Ok(PointFn {
            space: space.clone(),
            values,
        })
    }

    pub fn constant(space: &Space, v: XReal) -> Self {
        PointFn {
            space: space.clone(),
            values: vec![v; space.size()],
        }
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn values(&self) -> &[XReal] {
        &self.values
    }

    pub fn value(&self, point: usize) -> &XReal {
        &self.values[point]
    }

    pub fn is_nonneg(&self) -> bool {
        self.values.iter().all(XReal::is_nonneg)
    }

    /// Distinct values in increasing order.
    pub fn range(&self) -> Vec<XReal> {
        let mut r = self.values.clone();
        r.sort();
        r.dedup();
        r
    }

    pub fn preimage(&self, v: &XReal) -> SubsetMask {
        SubsetMask {
            space: self.space.clone(),
            bits: self.values.iter().map(|x| x == v).collect(),
        }
    }

    pub fn map(&self, f: impl Fn(&XReal) -> XReal) -> PointFn {
        PointFn {
            space: self.space.clone(),
            values: self.values.iter().map(f).collect(),
        }
    }

    pub fn zip_map(&self, other: &PointFn, f: impl Fn(&XReal, &XReal) -> XReal) -> Result<PointFn> {
        same_space(&self.space, &other.space)?;
        Ok(PointFn {
            space: self.space.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    /// Pointwise `self ≤ other`.
    pub fn le(&self, other: &PointFn) -> Result<bool> {
        same_space(&self.space, &other.space)?;
        Ok(self.values.iter().zip(&other.values).all(|(a, b)| a <= b))
    }

    pub fn differs_on(&self, other: &PointFn) -> Result<SubsetMask> {
        same_space(&self.space, &other.space)?;
        Ok(SubsetMask {
            space: self.space.clone(),
            bits: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a != b)
                .collect(),
        })
    }
}

/// Indicator of `a`.
pub fn charac(a: &SubsetMask) -> PointFn {
    PointFn {
        space: a.space.clone(),
        values: a
            .bits
            .iter()
            .map(|&b| if b { XReal::one() } else { XReal::zero() })
            .collect(),
    }
}

/// Measurability against the discrete σ-algebra on the (finite) range of
/// `f`: every level set must be measurable.
pub fn is_measurable_fn(sa: &SigmaAlgebra, f: &PointFn) -> Result<bool> {
    same_space(&sa.space, &f.space)?;
    for v in f.range() {
        if !sa.is_measurable(&f.preimage(&v))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Pointwise sum, with a flag telling whether every addition was legal
/// (never `∞ - ∞`).
pub fn fn_add(f: &PointFn, g: &PointFn) -> Result<(PointFn, bool)> {
    let sum = f.zip_map(g, xadd)?;
    let legal = f.values.iter().zip(&g.values).all(|(a, b)| xadd_legal(a, b));
    Ok((sum, legal))
}

pub fn fn_mul(f: &PointFn, g: &PointFn) -> Result<PointFn> {
    f.zip_map(g, xmul)
}

pub fn fn_scale(a: &XReal, f: &PointFn) -> PointFn {
    f.map(|v| xmul(a, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn space(n: usize) -> Space {
        FiniteSpace::of_size(n).unwrap()
    }

    fn mask(s: &Space, idx: &[usize]) -> SubsetMask {
        SubsetMask::from_indices(s, idx.iter().copied()).unwrap()
    }

    fn pf(s: &Space, v: &[i64]) -> PointFn {
        PointFn::new(s, v.iter().map(|&x| XReal::from_int(x)).collect()).unwrap()
    }

    #[test]
    fn space_validation() {
        assert!(FiniteSpace::new(Vec::<String>::new()).is_err());
        assert!(FiniteSpace::new(["a", "a"]).is_err());
        let s = FiniteSpace::new(["p", "q", "r"]).unwrap();
        assert_eq!(s.index_of("q"), Ok(1));
        assert_eq!(s.index_of("z"), Err(Error::UnknownLabel("z".into())));
    }

    #[test]
    fn indicators() {
        let s = FiniteSpace::new(["p", "q", "r"]).unwrap();
        assert_eq!(charac(&SubsetMask::empty(&s)), pf(&s, &[0, 0, 0]));
        assert_eq!(charac(&SubsetMask::full(&s)), pf(&s, &[1, 1, 1]));
        let q = SubsetMask::from_labels(&s, &["q"]).unwrap();
        assert_eq!(charac(&q), pf(&s, &[0, 1, 0]));
    }

    #[test]
    fn generation() {
        let s = space(3);
        let sa = generate_sigma(&s, &[mask(&s, &[0])]).unwrap();
        assert_eq!(sa.atoms(), &[mask(&s, &[0]), mask(&s, &[1, 2])]);
        let members: Vec<SubsetMask> = sa.members().collect();
        assert_eq!(members.len(), 4);
        for m in [mask(&s, &[]), mask(&s, &[0]), mask(&s, &[1, 2]), mask(&s, &[0, 1, 2])] {
            assert!(members.contains(&m));
        }

        let trivial = SigmaAlgebra::trivial(&s);
        assert_eq!(trivial.members().count(), 2);
        let discrete = SigmaAlgebra::discrete(&s);
        assert_eq!(discrete.members().count(), 8);
        assert!(discrete.is_discrete());
    }

    #[test]
    fn measurability() {
        let s = space(3);
        let sa = generate_sigma(&s, &[mask(&s, &[0])]).unwrap();
        assert!(sa.is_measurable(&mask(&s, &[1, 2])).unwrap());
        assert!(!sa.is_measurable(&mask(&s, &[1])).unwrap());
        for sa in [sa, SigmaAlgebra::trivial(&s), SigmaAlgebra::discrete(&s)] {
            assert!(sa.is_measurable(&SubsetMask::empty(&s)).unwrap());
            assert!(sa.is_measurable(&SubsetMask::full(&s)).unwrap());
        }
        let other = space(4);
        assert_eq!(
            SigmaAlgebra::trivial(&s).is_measurable(&SubsetMask::empty(&other)),
            Err(Error::SpaceMismatch)
        );
    }

    #[test]
    fn equality_of_generated() {
        let s = space(3);
        let a = generate_sigma(&s, &[mask(&s, &[0])]).unwrap();
        let b = generate_sigma(&s, &[mask(&s, &[1, 2])]).unwrap();
        let c = generate_sigma(&s, &[mask(&s, &[1])]).unwrap();
        assert!(sigma_equal_generated(&a, &b).unwrap());
        assert!(!sigma_equal_generated(&a, &c).unwrap());
        let all: Vec<SubsetMask> = a.members().collect();
        let again = generate_sigma(&s, &all).unwrap();
        assert!(sigma_equal_generated(&a, &again).unwrap());
    }

    #[test]
    fn product_generators() {
        let e = space(2);
        let f = FiniteSpace::new(["a"]).unwrap();
        let (p, gen) = product_generator(&e, &[mask(&e, &[0])], &f, &[]).unwrap();
        assert_eq!(p.labels(), &["(0,a)", "(1,a)"]);
        let zero_a = SubsetMask::from_labels(&p, &["(0,a)"]).unwrap();
        assert!(gen.contains(&zero_a));
        assert!(gen.contains(&SubsetMask::full(&p)));
    }

    #[test]
    fn product_needs_full_sets() {
        let e = space(2);
        let f = FiniteSpace::new(["a", "b"]).unwrap();
        let ge = [mask(&e, &[0])];
        let gf = [SubsetMask::from_labels(&f, &["a"]).unwrap()];
        let (p, gen) = product_generator(&e, &ge, &f, &gf).unwrap();
        let zero_f = product_mask(&p, &ge[0], &SubsetMask::full(&f)).unwrap();
        assert!(generate_sigma(&p, &gen).unwrap().is_measurable(&zero_f).unwrap());
        let naive = vec![product_mask(&p, &ge[0], &gf[0]).unwrap()];
        assert!(!generate_sigma(&p, &naive).unwrap().is_measurable(&zero_f).unwrap());
    }

    #[test]
    fn product_measurability() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let (e, f) = (space(rng.gen_range(1..4)), space(rng.gen_range(1..4)));
            let ge: Vec<SubsetMask> = (0..rng.gen_range(0..3))
                .map(|_| SubsetMask::from_word(&e, rng.gen()))
                .collect();
            let gf: Vec<SubsetMask> = (0..rng.gen_range(0..3))
                .map(|_| SubsetMask::from_word(&f, rng.gen()))
                .collect();
            let (sae, saf) = (generate_sigma(&e, &ge).unwrap(), generate_sigma(&f, &gf).unwrap());
            let (p, gen) = product_generator(&e, &ge, &f, &gf).unwrap();
            let sap = generate_sigma(&p, &gen).unwrap();
            for ae in sae.members() {
                for af in saf.members() {
                    assert!(sap.is_measurable(&product_mask(&p, &ae, &af).unwrap()).unwrap());
                }
            }
        }
    }

    #[test]
    fn function_measurability() {
        let s = space(3);
        let sa = generate_sigma(&s, &[mask(&s, &[0])]).unwrap();
        assert!(is_measurable_fn(&sa, &pf(&s, &[4, 4, 4])).unwrap());
        assert!(is_measurable_fn(&SigmaAlgebra::trivial(&s), &pf(&s, &[4, 4, 4])).unwrap());
        assert!(!is_measurable_fn(&sa, &pf(&s, &[1, 2, 3])).unwrap());
        assert!(is_measurable_fn(&sa, &pf(&s, &[5, 7, 7])).unwrap());
    }

    #[test]
    fn arithmetic() {
        let s = space(3);
        let f = pf(&s, &[1, 2, 3]);
        let (sum, legal) = fn_add(&f, &PointFn::constant(&s, XReal::zero())).unwrap();
        assert_eq!(sum, f);
        assert!(legal);
        let inf = PointFn::new(&s, vec![XReal::PosInf, XReal::zero(), XReal::zero()]).unwrap();
        let ninf = PointFn::new(&s, vec![XReal::NegInf, XReal::zero(), XReal::zero()]).unwrap();
        let (sum, legal) = fn_add(&inf, &ninf).unwrap();
        assert!(!legal);
        assert_eq!(sum, pf(&s, &[0, 0, 0]));
        assert_eq!(fn_scale(&XReal::PosInf, &pf(&s, &[0, 1, 2])).values()[0], XReal::zero());
        assert_eq!(fn_mul(&f, &f).unwrap(), pf(&s, &[1, 4, 9]));
    }

    fn random_measurable(rng: &mut ChaCha8Rng, sa: &SigmaAlgebra) -> PointFn {
        let vals: Vec<XReal> = (0..sa.num_atoms())
            .map(|_| match rng.gen_range(0..6) {
                0 => XReal::PosInf,
                1 => XReal::NegInf,
                _ => XReal::ratio(rng.gen_range(-5..6), rng.gen_range(1..4)),
            })
            .collect();
        let s = sa.space().clone();
        PointFn::new(&s, (0..s.size()).map(|x| vals[sa.atom_of(x)].clone()).collect()).unwrap()
    }

    #[test]
    fn measurability_closure() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let s = space(rng.gen_range(1..7));
            let gen: Vec<SubsetMask> = (0..rng.gen_range(0..4))
                .map(|_| SubsetMask::from_word(&s, rng.gen()))
                .collect();
            let sa = generate_sigma(&s, &gen).unwrap();
            let (f, g) = (random_measurable(&mut rng, &sa), random_measurable(&mut rng, &sa));
            // holds whether or not the sum was legal everywhere
            let (sum, _) = fn_add(&f, &g).unwrap();
            assert!(is_measurable_fn(&sa, &sum).unwrap());
            assert!(is_measurable_fn(&sa, &fn_mul(&f, &g).unwrap()).unwrap());
            assert!(is_measurable_fn(&sa, &fn_scale(&XReal::ratio(-3, 2), &f)).unwrap());

            // f agrees with measurable g on measurable A: f·1_A is measurable
            let a = sa.member_from_atoms(rng.gen());
            let wild = PointFn::new(
                &s,
                (0..s.size())
                    .map(|x| if a.contains(x) { g.value(x).clone() } else { XReal::from_int(x as i64) })
                    .collect(),
            )
            .unwrap();
            assert!(is_measurable_fn(&sa, &fn_mul(&wild, &charac(&a)).unwrap()).unwrap());
        }
    }

    #[test]
    fn intersections_stay_measurable() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let s = space(rng.gen_range(1..7));
            let gen: Vec<SubsetMask> = (0..3).map(|_| SubsetMask::from_word(&s, rng.gen())).collect();
            let sa = generate_sigma(&s, &gen).unwrap();
            let fam: Vec<SubsetMask> = (0..4).map(|_| sa.member_from_atoms(rng.gen())).collect();
            let inter = fam
                .iter()
                .try_fold(SubsetMask::full(&s), |acc, m| acc.intersection(m))
                .unwrap();
            assert!(sa.is_measurable(&inter).unwrap());
            for g in &gen {
                assert!(sa.is_measurable(g).unwrap());
            }
        }
    }
}

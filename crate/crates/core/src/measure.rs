//! Measures on finite σ-algebras and the classical measure lemmas.
//!
//! A [`Measure`] is stored as one nonnegative weight per atom; the value on a
//! measurable set is the sum of the weights of the atoms it contains. The
//! constructors are the only way to obtain one, so nonnegativity and
//! `μ(∅) = 0` hold by construction and additivity is structural.

use crate::error::{Error, Result};
use crate::sigma::{PointFn, SigmaAlgebra, SubsetMask};
use crate::xreal::{partial_sums, sum_xreal_list, sup_seq, xadd, TaggedSeq, XReal};

#[derive(Debug, Clone, PartialEq)]
pub struct Measure {
    sa: SigmaAlgebra,
    weights: Vec<XReal>,
    union_defect: Option<XReal>,
}

impl Measure {
    /// One weight per atom, in the order of [`SigmaAlgebra::atoms`].
    pub fn from_atom_weights(sa: &SigmaAlgebra, weights: Vec<XReal>) -> Result<Measure> {
        if weights.len() != sa.num_atoms() {
            return Err(Error::SpaceMismatch);
        }
        if !weights.iter().all(XReal::is_nonneg) {
            return Err(Error::NegativeWeight);
        }
        Ok(Measure {
            sa: sa.clone(),
            weights,
            union_defect: None,
        })
    }

    /// One weight per point; points sharing an atom must carry the same
    /// weight, which is then the weight of the whole atom.
    pub fn weighted(sa: &SigmaAlgebra, per_point: &[XReal]) -> Result<Measure> {
        if per_point.len() != sa.space().size() {
            return Err(Error::SpaceMismatch);
        }
        let mut weights: Vec<Option<XReal>> = vec![None; sa.num_atoms()];
        for (x, w) in per_point.iter().enumerate() {
            let slot = &mut weights[sa.atom_of(x)];
            match slot {
                None => *slot = Some(w.clone()),
                Some(prev) if prev != w => return Err(Error::NotConstantOnAtoms),
                _ => {}
            }
        }
        Self::from_atom_weights(sa, weights.into_iter().map(|w| w.expect("atoms are non-empty")).collect())
    }

    /// `μ(A) = |A|`; needs every singleton to be measurable.
    pub fn counting(sa: &SigmaAlgebra) -> Result<Measure> {
        if !sa.is_discrete() {
            return Err(Error::NotDiscrete);
        }
        Self::from_atom_weights(sa, vec![XReal::one(); sa.num_atoms()])
    }

    /// `δ_a(A) = 1_A(a)`, a measure for every σ-algebra.
    pub fn dirac(sa: &SigmaAlgebra, label: &str) -> Result<Measure> {
        let point = sa.space().index_of(label)?;
        Self::dirac_at(sa, point)
    }

    pub fn dirac_at(sa: &SigmaAlgebra, point: usize) -> Result<Measure> {
        if point >= sa.space().size() {
            return Err(Error::PointOutOfRange(point));
        }
        let hit = sa.atom_of(point);
        let weights = (0..sa.num_atoms())
            .map(|a| if a == hit { XReal::one() } else { XReal::zero() })
            .collect();
        Self::from_atom_weights(sa, weights)
    }

    /// A deliberately broken set function: `delta` is added to the value of
    /// every set meeting two or more atoms, so additivity fails. Only meant
    /// as a negative control for the property checks.
    pub fn with_union_defect(mut self, delta: XReal) -> Measure {
        self.union_defect = Some(delta);
        self
    }

    pub fn sa(&self) -> &SigmaAlgebra {
        &self.sa
    }

    pub fn atom_weights(&self) -> &[XReal] {
        &self.weights
    }

    pub fn point_weight(&self, point: usize) -> &XReal {
        &self.weights[self.sa.atom_of(point)]
    }

    /// `μ(a)`; non-measurable sets are rejected.
    pub fn measure_of(&self, a: &SubsetMask) -> Result<XReal> {
        if !self.sa.is_measurable(a)? {
            return Err(Error::NotMeasurable);
        }
        let inside: Vec<XReal> = self
            .sa
            .atoms()
            .iter()
            .zip(&self.weights)
            .filter(|(atom, _)| atom.indices().next().is_some_and(|x| a.contains(x)))
            .map(|(_, w)| w.clone())
            .collect();
        let total = sum_xreal_list(&inside);
        match &self.union_defect {
            Some(delta) if inside.len() >= 2 => Ok(xadd(&total, delta)),
            _ => Ok(total),
        }
    }

    /// Largest measurable set of measure zero: the union of zero-weight atoms.
    pub fn null_set(&self) -> SubsetMask {
        let bits = (0..self.sa.space().size())
            .map(|x| self.point_weight(x).is_zero())
            .collect();
        SubsetMask::from_bits(self.sa.space(), bits).expect("sized to the space")
    }
}

fn require_measurable(m: &Measure, sets: &[SubsetMask]) -> Result<()> {
    for a in sets {
        if !m.sa.is_measurable(a)? {
            return Err(Error::NotMeasurable);
        }
    }
    Ok(())
}

fn require_pairwise_disjoint(sets: &[SubsetMask]) -> Result<()> {
    for (i, a) in sets.iter().enumerate() {
        for b in &sets[i + 1..] {
            if !a.is_disjoint(b)? {
                return Err(Error::NotDisjoint);
            }
        }
    }
    Ok(())
}

/// `μ(A ∪ B) = μ(A) + μ(B)` for disjoint measurable `A`, `B`.
pub fn check_additivity(m: &Measure, a: &SubsetMask, b: &SubsetMask) -> Result<bool> {
    require_measurable(m, &[a.clone(), b.clone()])?;
    if !a.is_disjoint(b)? {
        return Err(Error::NotDisjoint);
    }
    Ok(m.measure_of(&a.union(b)?)? == xadd(&m.measure_of(a)?, &m.measure_of(b)?))
}

/// `A ⊆ B ⇒ μ(A) ≤ μ(B)`; vacuously true when `A ⊄ B`.
pub fn check_monotonicity(m: &Measure, a: &SubsetMask, b: &SubsetMask) -> Result<bool> {
    require_measurable(m, &[a.clone(), b.clone()])?;
    if !a.is_subset(b)? {
        return Ok(true);
    }
    Ok(m.measure_of(a)? <= m.measure_of(b)?)
}

/// `μ(A) = Σ_n μ(A ∩ B_n)` for a measurable partition `(B_n)` of the space.
pub fn check_decomposition(m: &Measure, a: &SubsetMask, partition: &[SubsetMask]) -> Result<bool> {
    require_measurable(m, std::slice::from_ref(a))?;
    require_measurable(m, partition)?;
    require_pairwise_disjoint(partition)?;
    let space = m.sa.space();
    let cover = crate::sigma::union_all(space, partition)?;
    if !cover.is_full() {
        return Err(Error::NotDisjoint);
    }
    let pieces = partition
        .iter()
        .map(|b| m.measure_of(&a.intersection(b)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(m.measure_of(a)? == sum_xreal_list(&pieces))
}

/// Union of every set the family ever takes.
fn family_union(fam: &TaggedSeq<SubsetMask>) -> Result<SubsetMask> {
    let first = fam.prefix().first().ok_or(Error::EmptyPrefix)?;
    crate::sigma::union_all(first.space(), fam.prefix())
}

/// `μ(⋃ A_n) = sup_N Σ_{n ≤ N} μ(A_n)` for a disjoint family whose tail is
/// empty.
pub fn check_sigma_additivity(m: &Measure, fam: &TaggedSeq<SubsetMask>) -> Result<bool> {
    let tail = fam.limit()?;
    require_measurable(m, fam.prefix())?;
    require_pairwise_disjoint(fam.prefix())?;
    if !tail.is_empty() {
        // the tail repeats forever, so it must be disjoint from itself
        return Err(Error::NotDisjoint);
    }
    let lhs = m.measure_of(&family_union(fam)?)?;
    let terms = fam
        .prefix()
        .iter()
        .map(|a| m.measure_of(a))
        .collect::<Result<Vec<_>>>()?;
    let sums = TaggedSeq::constant_after(partial_sums(&terms))?;
    Ok(lhs == sup_seq(&sums)?)
}

/// `B_0 = A_0`, `B_{n+1} = A_{n+1} \ A_n`. For a nondecreasing family the
/// layers are disjoint and have the same partial unions.
pub fn layers(fam: &TaggedSeq<SubsetMask>) -> Result<TaggedSeq<SubsetMask>> {
    let p = fam.prefix();
    let mut out = Vec::with_capacity(p.len() + 1);
    if let Some(first) = p.first() {
        out.push(first.clone());
    }
    for w in p.windows(2) {
        out.push(w[1].difference(&w[0])?);
    }
    if let Ok(last) = fam.limit() {
        out.push(SubsetMask::empty(last.space()));
    }
    TaggedSeq::new(out, fam.tail())
}

/// `A_0 ∪ … ∪ A_n`.
pub fn partial_union(fam: &TaggedSeq<SubsetMask>, n: usize) -> Result<SubsetMask> {
    let first = fam.prefix().first().ok_or(Error::EmptyPrefix)?;
    let mut acc = SubsetMask::empty(first.space());
    for k in 0..=n.min(fam.len()) {
        match fam.term(k) {
            Some(a) => acc = acc.union(a)?,
            None => return Err(Error::UndefinedTail),
        }
    }
    Ok(acc)
}

/// `μ(⋃ A_n) = sup_n μ(A_n)` for a nondecreasing family.
pub fn check_continuity_from_below(m: &Measure, fam: &TaggedSeq<SubsetMask>) -> Result<bool> {
    fam.require_defined()?;
    for w in fam.prefix().windows(2) {
        if !w[0].is_subset(&w[1])? {
            return Err(Error::NotNondecreasing);
        }
    }
    require_measurable(m, fam.prefix())?;
    let lhs = m.measure_of(&family_union(fam)?)?;
    let values = fam.try_map(|a| m.measure_of(a))?;
    Ok(lhs == sup_seq(&values)?)
}

/// `μ(⋃ A_n) ≤ sup_N Σ_{n ≤ N} μ(A_n)`.
///
/// A tail of positive measure repeats forever, so the partial sums diverge
/// and the right-hand side is `+∞`.
pub fn check_boole(m: &Measure, fam: &TaggedSeq<SubsetMask>) -> Result<bool> {
    let tail = fam.limit()?;
    require_measurable(m, fam.prefix())?;
    let lhs = m.measure_of(&family_union(fam)?)?;
    let terms = fam
        .prefix()
        .iter()
        .map(|a| m.measure_of(a))
        .collect::<Result<Vec<_>>>()?;
    let rhs = if m.measure_of(tail)?.is_positive() {
        XReal::PosInf
    } else {
        sup_seq(&TaggedSeq::constant_after(partial_sums(&terms))?)?
    };
    Ok(lhs <= rhs)
}

/// Whether `a` sits inside a measurable set of measure zero. `a` itself
/// need not be measurable.
pub fn is_negligible(m: &Measure, a: &SubsetMask) -> Result<bool> {
    a.is_subset(&m.null_set())
}

/// Whether `f = g` outside a negligible set.
pub fn ae_eq(m: &Measure, f: &PointFn, g: &PointFn) -> Result<bool> {
    is_negligible(m, &f.differs_on(g)?)
}

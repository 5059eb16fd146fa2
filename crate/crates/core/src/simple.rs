//! Simple functions and their integral.
//!
//! A simple function carries the canonical list of the values it attains:
//! strictly increasing, no duplicates, nothing unattained. That list is
//! unique for a given function, so the integral
//! `Σ_{y ∈ ℓ} y · μ(f⁻¹(y))` does not depend on how the function was built.

use crate::error::{Error, Result};
use crate::measure::Measure;
use crate::sigma::{charac, PointFn, SigmaAlgebra, SubsetMask};
use crate::xreal::{format_rational, sum_xreal_map, xmul, Rational, XReal};

/// Elements of `l` satisfying `p`, in order.
pub fn select<T: Clone>(p: impl Fn(&T) -> bool, l: &[T]) -> Vec<T> {
    l.iter().filter(|x| p(x)).cloned().collect()
}

fn finite_values(f: &PointFn) -> Result<Vec<Rational>> {
    f.values()
        .iter()
        .map(|v| v.as_finite().cloned().ok_or(Error::NotFinite))
        .collect()
}

/// Canonical value list of `f` from a list `l` covering its values:
/// remove duplicates, drop unattained values, sort.
pub fn canonize(f: &PointFn, l: &[Rational]) -> Result<Vec<Rational>> {
    let values = finite_values(f)?;
    if let Some(missing) = values.iter().find(|v| !l.contains(v)) {
        return Err(Error::MissingValue(format_rational(missing)));
    }
    let mut nodup: Vec<Rational> = Vec::with_capacity(l.len());
    for y in l {
        if !nodup.contains(y) {
            nodup.push(y.clone());
        }
    }
    let mut useful = select(|y| values.contains(y), &nodup);
    useful.sort();
    Ok(useful)
}

/// A rational-valued function whose level sets are measurable.
#[derive(Debug, Clone, PartialEq)]
pub struct SimpleFunction {
    f: PointFn,
    canon: Vec<Rational>,
    sa: SigmaAlgebra,
}

/// Builds a simple function from `f` and a covering list of its values.
/// The result does not depend on `hint` beyond its covering `f`.
pub fn make_sf(sa: &SigmaAlgebra, f: &PointFn, hint: &[Rational]) -> Result<SimpleFunction> {
    sa.check_space(f.space())?;
    let canon = canonize(f, hint)?;
    for y in &canon {
        if !sa.is_measurable(&f.preimage(&XReal::Finite(y.clone())))? {
            return Err(Error::PreimageNotMeasurable(format_rational(y)));
        }
    }
    Ok(SimpleFunction {
        f: f.clone(),
        canon,
        sa: sa.clone(),
    })
}

impl SimpleFunction {
    /// [`make_sf`] with the raw value list as hint.
    pub fn new(sa: &SigmaAlgebra, f: &PointFn) -> Result<SimpleFunction> {
        let hint = finite_values(f)?;
        make_sf(sa, f, &hint)
    }

    pub fn charac(sa: &SigmaAlgebra, a: &SubsetMask) -> Result<SimpleFunction> {
        Self::new(sa, &charac(a))
    }

    pub fn function(&self) -> &PointFn {
        &self.f
    }

    pub fn canon(&self) -> &[Rational] {
        &self.canon
    }

    pub fn sa(&self) -> &SigmaAlgebra {
        &self.sa
    }

    pub fn value(&self, point: usize) -> &Rational {
        self.f.value(point).as_finite().expect("simple functions are finite")
    }

    pub fn preimage(&self, y: &Rational) -> SubsetMask {
        self.f.preimage(&XReal::Finite(y.clone()))
    }

    pub fn is_nonneg(&self) -> bool {
        self.canon.first().is_none_or(|y| y >= &Rational::from_integer(0.into()))
    }
}

/// `Σ_{y ∈ ℓ} y · 1_{f⁻¹(y)}(x)`, which must give back `f(x)`.
pub fn sf_reconstruct(s: &SimpleFunction, point: usize) -> XReal {
    sum_xreal_map(&s.canon, |y| {
        xmul(&XReal::Finite(y.clone()), charac(&s.preimage(y)).value(point))
    })
}

/// `y ↦ y · μ(f⁻¹(y))`.
fn level_term(m: &Measure, s: &SimpleFunction, y: &Rational) -> Result<XReal> {
    Ok(xmul(&XReal::Finite(y.clone()), &m.measure_of(&s.preimage(y))?))
}

/// `∫ s dμ = Σ_{y ∈ ℓ} y · μ(s⁻¹(y))` for nonnegative `s`.
pub fn lint_sfp(m: &Measure, s: &SimpleFunction) -> Result<XReal> {
    m.sa().check_space(s.f.space())?;
    if !s.is_nonneg() {
        return Err(Error::NegativeValue);
    }
    let terms = s
        .canon
        .iter()
        .map(|y| level_term(m, s, y))
        .collect::<Result<Vec<_>>>()?;
    Ok(crate::xreal::sum_xreal_list(&terms))
}

fn same_sa(s: &SimpleFunction, t: &SimpleFunction) -> Result<()> {
    if s.sa == t.sa {
        Ok(())
    } else {
        Err(Error::SpaceMismatch)
    }
}

/// Pointwise sum, canonized from the list of pairwise sums of the two
/// canonical lists.
pub fn sf_add(s: &SimpleFunction, t: &SimpleFunction) -> Result<SimpleFunction> {
    same_sa(s, t)?;
    let (sum, _) = crate::sigma::fn_add(&s.f, &t.f)?;
    let pairwise: Vec<Rational> = s
        .canon
        .iter()
        .flat_map(|a| t.canon.iter().map(move |b| a + b))
        .collect();
    make_sf(&s.sa, &sum, &pairwise)
}

/// `a · s` for `a ≥ 0`.
pub fn sf_scale(a: &Rational, s: &SimpleFunction) -> Result<SimpleFunction> {
    if a < &Rational::from_integer(0.into()) {
        return Err(Error::NegativeScalar);
    }
    let scaled = crate::sigma::fn_scale(&XReal::Finite(a.clone()), &s.f);
    let hint: Vec<Rational> = s.canon.iter().map(|y| a * y).collect();
    make_sf(&s.sa, &scaled, &hint)
}

/// Evaluates both sides of
/// `Σ_{z ∈ ℓ_t} (y + z) μ(s⁻¹(y) ∩ t⁻¹(z)) = Σ_{w ∈ ℓ_{s+t}} w μ(s⁻¹(y) ∩ (s+t)⁻¹(w))`
/// and reports whether they agree.
pub fn check_change_of_variable(
    m: &Measure,
    s: &SimpleFunction,
    t: &SimpleFunction,
    y: &Rational,
) -> Result<bool> {
    if !s.canon.contains(y) {
        return Err(Error::ValueNotInCanon(format_rational(y)));
    }
    if !s.is_nonneg() || !t.is_nonneg() {
        return Err(Error::NegativeValue);
    }
    let st = sf_add(s, t)?;
    let level = s.preimage(y);
    let lhs_terms = t
        .canon
        .iter()
        .map(|z| {
            let cell = level.intersection(&t.preimage(z))?;
            Ok(xmul(&XReal::Finite(y + z), &m.measure_of(&cell)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let rhs_terms = st
        .canon
        .iter()
        .map(|w| {
            let cell = level.intersection(&st.preimage(w))?;
            Ok(xmul(&XReal::Finite(w.clone()), &m.measure_of(&cell)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(crate::xreal::sum_xreal_list(&lhs_terms) == crate::xreal::sum_xreal_list(&rhs_terms))
}

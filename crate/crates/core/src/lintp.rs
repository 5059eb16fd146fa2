//! The integral of nonnegative measurable functions.
//!
//! `∫ f dμ` is the supremum of `∫ φ dμ` over nonnegative simple `φ ≤ f`. It
//! is computed along the adapted sequence
//!
//! ```text
//! φ_n(x) = ⌊2ⁿ f(x)⌋ / 2ⁿ   if f(x) < n
//!          n                 otherwise
//! ```
//!
//! which is nondecreasing in `n` and converges to `f` pointwise. On a finite
//! space `∫ φ_n dμ` either becomes constant after finitely many steps (all
//! relevant values dyadic) or converges to the sum of the per-atom limits;
//! [`lint_p`] returns that limit exactly in both cases.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::measure::{ae_eq, Measure};
use crate::sigma::{charac, fn_add, fn_mul, fn_scale, is_measurable_fn, PointFn, SigmaAlgebra, SubsetMask};
use crate::simple::{lint_sfp, make_sf, SimpleFunction};
use crate::xreal::{liminf_seq, sum_xreal_list, sup_seq, xadd, xmul, Rational, TaggedSeq, XReal};

/// `⌊2ⁿ v⌋ / 2ⁿ`, computed on integers.
pub fn dyadic_floor(v: &Rational, n: u32) -> Rational {
    let scale = BigInt::one() << n;
    let floored = (v.numer() * &scale).div_floor(v.denom());
    Rational::new(floored, scale)
}

/// Exponent `k` with `v = m / 2^k`, `m` odd, or `None` if `v` is not dyadic.
fn dyadic_depth(v: &Rational) -> Option<u32> {
    let den = v.denom();
    let k = den.trailing_zeros().unwrap_or(0);
    if (den >> k).is_one() {
        Some(u32::try_from(k).expect("denominator exponent fits in u32"))
    } else {
        None
    }
}

/// `φ_n(v)` for a single value.
pub fn adapted_value(v: &XReal, n: u32) -> Rational {
    let cap = Rational::from_integer(BigInt::from(n));
    match v {
        XReal::Finite(q) if q < &cap => dyadic_floor(q, n),
        _ => cap,
    }
}

fn validate(sa: &SigmaAlgebra, f: &PointFn) -> Result<()> {
    sa.check_space(f.space())?;
    if !f.is_nonneg() {
        return Err(Error::NegativeValue);
    }
    if !is_measurable_fn(sa, f)? {
        return Err(Error::NotMeasurable);
    }
    Ok(())
}

/// The `n`-th term of the adapted sequence of `f`.
pub fn mk_adapted_term(sa: &SigmaAlgebra, f: &PointFn, n: u32) -> Result<SimpleFunction> {
    validate(sa, f)?;
    adapted_term_unchecked(sa, f, n)
}

fn adapted_term_unchecked(sa: &SigmaAlgebra, f: &PointFn, n: u32) -> Result<SimpleFunction> {
    let values: Vec<Rational> = f.values().iter().map(|v| adapted_value(v, n)).collect();
    let phi = PointFn::new(f.space(), values.iter().cloned().map(XReal::Finite).collect())?;
    make_sf(sa, &phi, &values)
}

/// The adapted sequence `(φ_n)` of a validated target function.
#[derive(Debug, Clone)]
pub struct AdaptedSeq {
    sa: SigmaAlgebra,
    target: PointFn,
}

impl AdaptedSeq {
    pub fn new(sa: &SigmaAlgebra, target: &PointFn) -> Result<AdaptedSeq> {
        validate(sa, target)?;
        Ok(AdaptedSeq {
            sa: sa.clone(),
            target: target.clone(),
        })
    }

    pub fn target(&self) -> &PointFn {
        &self.target
    }

    pub fn term(&self, n: u32) -> SimpleFunction {
        adapted_term_unchecked(&self.sa, &self.target, n).expect("target validated on construction")
    }
}

/// First `n` after which `n ↦ ∫ φ_n dμ` is constant, or `None` when the
/// integrals keep moving forever (a non-dyadic value, or `+∞`, on an atom of
/// finite positive measure).
pub fn stabilization_index(m: &Measure, f: &PointFn) -> Option<u32> {
    let sa = m.sa();
    let mut horizon = 1u32;
    for (atom, w) in sa.atoms().iter().zip(m.atom_weights()) {
        if w.is_zero() {
            continue;
        }
        let x = atom.indices().next().expect("atoms are non-empty");
        match f.value(x) {
            XReal::PosInf => {
                if w.is_finite() {
                    return None;
                }
            }
            XReal::Finite(v) => {
                // φ_n(α) = n until n exceeds the value
                horizon = horizon.max((v.floor().to_integer() + 1u32).to_u32()?);
                match (dyadic_depth(v), w) {
                    (Some(k), _) => horizon = horizon.max(k),
                    (None, XReal::PosInf) => {
                        if v.is_positive() {
                            // smallest n with ⌊2ⁿ v⌋ ≥ 1
                            let mut n = 0u32;
                            while dyadic_floor(v, n).is_zero() {
                                n += 1;
                            }
                            horizon = horizon.max(n);
                        }
                    }
                    (None, _) => return None,
                }
            }
            XReal::NegInf => unreachable!("validated nonnegative"),
        }
    }
    Some(horizon)
}

/// `lim_n μ(α) · φ_n(α)` summed over atoms.
fn limit_of_adapted_integrals(m: &Measure, f: &PointFn) -> XReal {
    let terms: Vec<XReal> = m
        .sa()
        .atoms()
        .iter()
        .zip(m.atom_weights())
        .map(|(atom, w)| {
            let x = atom.indices().next().expect("atoms are non-empty");
            // φ_n(α) increases to f(α), so the products increase to the
            // product of the limits under the 0·∞ = 0 convention
            xmul(f.value(x), w)
        })
        .collect();
    sum_xreal_list(&terms)
}

/// `∫ f dμ` for nonnegative measurable `f`.
pub fn lint_p(m: &Measure, f: &PointFn) -> Result<XReal> {
    validate(m.sa(), f)?;
    match stabilization_index(m, f) {
        Some(n) => lint_sfp(m, &adapted_term_unchecked(m.sa(), f, n)?),
        None => Ok(limit_of_adapted_integrals(m, f)),
    }
}

/// `b - a` for `a ≤ b`, with `∞ - ∞` read as `0`.
fn gap(a: &XReal, b: &XReal) -> XReal {
    match (a, b) {
        (XReal::PosInf, XReal::PosInf) => XReal::zero(),
        _ => xadd(b, &a.neg()),
    }
}

/// One row of a convergence certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateRow {
    pub n: u32,
    pub integral: XReal,
    pub gap: XReal,
}

/// `(n, ∫ φ_n dμ, ∫ f dμ - ∫ φ_n dμ)` for `n = 1..=n_max`.
pub fn convergence_certificate(m: &Measure, f: &PointFn, n_max: u32) -> Result<Vec<CertificateRow>> {
    if n_max == 0 {
        return Err(Error::InvalidIndex);
    }
    let total = lint_p(m, f)?;
    let seq = AdaptedSeq::new(m.sa(), f)?;
    (1..=n_max)
        .map(|n| {
            let integral = lint_sfp(m, &seq.term(n))?;
            let gap = gap(&integral, &total);
            Ok(CertificateRow { n, integral, gap })
        })
        .collect()
}

fn pointwise<F>(fam: &TaggedSeq<PointFn>, reduce: F) -> Result<PointFn>
where
    F: Fn(&TaggedSeq<XReal>) -> Result<XReal>,
{
    let limit = fam.limit()?;
    let space = limit.space();
    let mut values = Vec::with_capacity(space.size());
    for x in 0..space.size() {
        let column = fam.try_map(|f| {
            if f.space() != space {
                return Err(Error::SpaceMismatch);
            }
            Ok(f.value(x).clone())
        })?;
        values.push(reduce(&column)?);
    }
    PointFn::new(space, values)
}

/// Pointwise supremum of an eventually-constant family.
pub fn pointwise_sup(fam: &TaggedSeq<PointFn>) -> Result<PointFn> {
    pointwise(fam, sup_seq)
}

/// Pointwise liminf of an eventually-constant family.
pub fn pointwise_liminf(fam: &TaggedSeq<PointFn>) -> Result<PointFn> {
    pointwise(fam, liminf_seq)
}

/// `∫ sup_n f_n = sup_n ∫ f_n` for a nondecreasing family.
pub fn check_beppo_levi(m: &Measure, fam: &TaggedSeq<PointFn>) -> Result<bool> {
    fam.require_defined()?;
    for f in fam.prefix() {
        validate(m.sa(), f)?;
    }
    for w in fam.prefix().windows(2) {
        if !w[0].le(&w[1])? {
            return Err(Error::NotNondecreasing);
        }
    }
    let lhs = lint_p(m, &pointwise_sup(fam)?)?;
    let rhs = sup_seq(&fam.try_map(|f| lint_p(m, f))?)?;
    Ok(lhs == rhs)
}

/// `∫ liminf_n f_n ≤ liminf_n ∫ f_n`.
pub fn check_fatou(m: &Measure, fam: &TaggedSeq<PointFn>) -> Result<bool> {
    let (lhs, rhs) = fatou_sides(m, fam)?;
    Ok(lhs <= rhs)
}

/// Both sides of Fatou's inequality.
pub fn fatou_sides(m: &Measure, fam: &TaggedSeq<PointFn>) -> Result<(XReal, XReal)> {
    fam.require_defined()?;
    for f in fam.prefix() {
        validate(m.sa(), f)?;
    }
    let lhs = lint_p(m, &pointwise_liminf(fam)?)?;
    let rhs = liminf_seq(&fam.try_map(|f| lint_p(m, f))?)?;
    Ok((lhs, rhs))
}

/// Outcome of each integral identity checked by [`lint_p_props`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PropsReport {
    pub additivity: bool,
    pub scaling: bool,
    pub ae_definite: bool,
    pub decomposition: bool,
    pub ae_eq_compat: bool,
    pub ae_le_compat: bool,
    pub monotonicity: bool,
    pub restriction: bool,
}

impl PropsReport {
    pub fn entries(&self) -> [(&'static str, bool); 8] {
        [
            ("additivity", self.additivity),
            ("scaling", self.scaling),
            ("ae_definite", self.ae_definite),
            ("decomposition", self.decomposition),
            ("ae_eq_compat", self.ae_eq_compat),
            ("ae_le_compat", self.ae_le_compat),
            ("monotonicity", self.monotonicity),
            ("restriction", self.restriction),
        ]
    }

    pub fn all_hold(&self) -> bool {
        self.entries().iter().all(|(_, ok)| *ok)
    }
}

/// Evaluates the standard identities of the integral on `(f, g, a, A)`.
pub fn lint_p_props(
    m: &Measure,
    f: &PointFn,
    g: &PointFn,
    a: &XReal,
    set: &SubsetMask,
) -> Result<PropsReport> {
    if !a.is_nonneg() {
        return Err(Error::NegativeScalar);
    }
    if !m.sa().is_measurable(set)? {
        return Err(Error::NotMeasurable);
    }
    let int_f = lint_p(m, f)?;
    let int_g = lint_p(m, g)?;
    let space = f.space();

    let (sum, _) = fn_add(f, g)?;
    let additivity = lint_p(m, &sum)? == xadd(&int_f, &int_g);

    let scaling = lint_p(m, &fn_scale(a, f))? == xmul(a, &int_f);

    let zero = PointFn::constant(space, XReal::zero());
    let ae_definite = ae_eq(m, f, &zero)? == int_f.is_zero();

    let on_a = fn_mul(f, &charac(set))?;
    let off_a = fn_mul(f, &charac(&set.complement()))?;
    let decomposition = int_f == xadd(&lint_p(m, &on_a)?, &lint_p(m, &off_a)?);

    let ae_eq_compat = !ae_eq(m, f, g)? || int_f == int_g;

    let bad = PointFn::new(
        space,
        f.values()
            .iter()
            .zip(g.values())
            .map(|(a, b)| if a > b { XReal::one() } else { XReal::zero() })
            .collect(),
    )?;
    let f_le_g_ae = crate::measure::is_negligible(m, &bad.preimage(&XReal::one()))?;
    let ae_le_compat = !f_le_g_ae || int_f <= int_g;

    let monotonicity = !f.le(g)? || int_f <= int_g;

    // h agrees with f on A and with g elsewhere
    let h = PointFn::new(
        space,
        (0..space.size())
            .map(|x| if set.contains(x) { f.value(x) } else { g.value(x) }.clone())
            .collect(),
    )?;
    let restrict = |u: &PointFn| fn_mul(u, &charac(set)).and_then(|v| lint_p(m, &v));
    let agree_on_a = set.indices().all(|x| f.value(x) == g.value(x));
    let restriction = restrict(f)? == restrict(&h)? && (!agree_on_a || restrict(f)? == restrict(g)?);

    Ok(PropsReport {
        additivity,
        scaling,
        ae_definite,
        decomposition,
        ae_eq_compat,
        ae_le_compat,
        monotonicity,
        restriction,
    })
}

/// `∫ f dδ_a`, which equals `f(a)`.
pub fn lint_p_dirac(sa: &SigmaAlgebra, point: usize, f: &PointFn) -> Result<XReal> {
    let m = Measure::dirac_at(sa, point)?;
    let v = lint_p(&m, f)?;
    debug_assert_eq!(&v, f.value(point));
    Ok(v)
}

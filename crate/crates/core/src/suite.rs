//! Randomized and spec-driven runs of every property check in the crate.
//!
//! [`check_model`] applies each check to every applicable tuple of named
//! objects in a [`Model`]. A check whose preconditions do not hold (a family
//! that is not disjoint, a function that is not measurable, ...) counts as
//! skipped; only a check that runs and returns `false` is a failure.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::lintp::{check_beppo_levi, check_fatou, lint_p_props};
use crate::measure::{check_additivity, check_boole, check_continuity_from_below, check_monotonicity, check_sigma_additivity, Measure};
use crate::simple::{check_change_of_variable, lint_sfp, sf_add, sf_scale, SimpleFunction};
use crate::sigma::{generate_sigma, FiniteSpace, PointFn, SigmaAlgebra, SubsetMask};
use crate::specfile::{MeasureDecl, Model, NamedSeq, SpecFile};
use crate::xreal::{xadd, xmul, Rational, Tail, XReal};
use crate::Error;

/// Property names in report order.
pub const PROPERTIES: &[&str] = &[
    "sigma_additivity",
    "boole",
    "continuity_from_below",
    "additivity",
    "monotonicity",
    "beppo_levi",
    "fatou",
    "lint_p.additivity",
    "lint_p.scaling",
    "lint_p.ae_definite",
    "lint_p.decomposition",
    "lint_p.ae_eq_compat",
    "lint_p.ae_le_compat",
    "lint_p.monotonicity",
    "lint_p.restriction",
    "lint_sfp.additivity",
    "lint_sfp.scaling",
    "change_of_variable",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Skip(Error),
}

/// One check applied to one tuple of named objects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub property: &'static str,
    pub subject: String,
    pub verdict: Verdict,
}

fn verdict(r: crate::Result<bool>) -> Verdict {
    match r {
        Ok(true) => Verdict::Pass,
        Ok(false) => Verdict::Fail,
        Err(e) => Verdict::Skip(e),
    }
}

/// First name for each distinct value.
fn distinct<T: PartialEq>(items: &[(String, T)]) -> Vec<&(String, T)> {
    let mut out: Vec<&(String, T)> = Vec::new();
    for item in items {
        if !out.iter().any(|o| o.1 == item.1) {
            out.push(item);
        }
    }
    out
}

fn finite_scalar(a: &XReal) -> Option<&Rational> {
    a.as_finite()
}

/// Runs every applicable check on `model`.
pub fn check_model(model: &Model) -> Vec<Outcome> {
    let m = &model.measure;
    let mut out = Vec::new();
    let mut push = |property: &'static str, subject: String, r: crate::Result<bool>| {
        out.push(Outcome {
            property,
            subject,
            verdict: verdict(r),
        })
    };

    for (name, fam) in &model.families {
        push("sigma_additivity", name.clone(), check_sigma_additivity(m, fam));
        push("boole", name.clone(), check_boole(m, fam));
        push("continuity_from_below", name.clone(), check_continuity_from_below(m, fam));
    }

    let mut sets = distinct(&model.sets);
    let complements: Vec<(String, SubsetMask)> = sets.iter().map(|(n, a)| (format!("~{n}"), a.complement())).collect();
    for c in &complements {
        if !sets.iter().any(|s| s.1 == c.1) {
            sets.push(c);
        }
    }
    for (na, a) in &sets {
        for (nb, b) in &sets {
            push("additivity", format!("{na},{nb}"), check_additivity(m, a, b));
            push("monotonicity", format!("{na},{nb}"), check_monotonicity(m, a, b));
        }
    }

    for (name, seq) in &model.sequences {
        push("beppo_levi", name.clone(), check_beppo_levi(m, seq));
        push("fatou", name.clone(), check_fatou(m, seq));
    }

    let functions = distinct(&model.functions);
    let default_scalar = [("1".to_string(), XReal::one())];
    let scalars = if model.scalars.is_empty() {
        distinct(&default_scalar)
    } else {
        distinct(&model.scalars)
    };
    let whole = [("E".to_string(), SubsetMask::full(&model.space))];
    let prop_sets = if model.sets.is_empty() {
        distinct(&whole)
    } else {
        distinct(&model.sets)
    };
    for (nf, f) in &functions {
        for (ng, g) in &functions {
            for (na, a) in &scalars {
                for (ns, s) in &prop_sets {
                    let subject = format!("{nf},{ng},{na},{ns}");
                    match lint_p_props(m, f, g, a, s) {
                        Ok(report) => {
                            for ((_, ok), property) in report.entries().iter().zip(&PROPERTIES[7..15]) {
                                push(property, subject.clone(), Ok(*ok));
                            }
                        }
                        Err(e) => {
                            for property in &PROPERTIES[7..15] {
                                push(property, subject.clone(), Err(e.clone()));
                            }
                        }
                    }
                }
            }
        }
    }

    let simple: Vec<(&String, crate::Result<SimpleFunction>)> = functions
        .iter()
        .map(|(n, f)| (n, SimpleFunction::new(&model.sa, f)))
        .collect();
    for (ns, s) in &simple {
        for (nt, t) in &simple {
            let subject = format!("{ns},{nt}");
            let (s, t) = match (s, t) {
                (Ok(s), Ok(t)) => (s, t),
                (Err(e), _) | (_, Err(e)) => {
                    push("lint_sfp.additivity", subject.clone(), Err(e.clone()));
                    push("change_of_variable", subject, Err(e.clone()));
                    continue;
                }
            };
            let additive = sf_add(s, t).and_then(|st| {
                Ok(lint_sfp(m, &st)? == xadd(&lint_sfp(m, s)?, &lint_sfp(m, t)?))
            });
            push("lint_sfp.additivity", subject.clone(), additive);
            if s.canon().is_empty() {
                continue;
            }
            let cov = s
                .canon()
                .iter()
                .map(|y| check_change_of_variable(m, s, t, y))
                .collect::<crate::Result<Vec<bool>>>()
                .map(|v| v.into_iter().all(|ok| ok));
            push("change_of_variable", subject, cov);
        }
        if let Ok(s) = s {
            for (na, a) in &scalars {
                let Some(q) = finite_scalar(a) else { continue };
                let scaled = sf_scale(q, s).and_then(|sa| Ok(lint_sfp(m, &sa)? == xmul(a, &lint_sfp(m, s)?)));
                push("lint_sfp.scaling", format!("{na},{ns}"), scaled);
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

/// A failed check together with the case that produced it.
#[derive(Debug, Clone)]
pub struct Failure {
    pub case: usize,
    pub property: &'static str,
    pub subject: String,
    pub spec: SpecFile,
}

#[derive(Debug, Clone, Default)]
pub struct SuiteReport {
    pub cases: usize,
    pub tallies: BTreeMap<&'static str, Tally>,
    pub failures: Vec<Failure>,
}

impl SuiteReport {
    fn record(&mut self, case: usize, spec: &SpecFile, outcomes: Vec<Outcome>) {
        self.cases += 1;
        for o in outcomes {
            let t = self.tallies.entry(o.property).or_default();
            match o.verdict {
                Verdict::Pass => t.pass += 1,
                Verdict::Skip(_) => t.skip += 1,
                Verdict::Fail => {
                    t.fail += 1;
                    self.failures.push(Failure {
                        case,
                        property: o.property,
                        subject: o.subject,
                        spec: spec.clone(),
                    });
                }
            }
        }
    }

    pub fn tally(&self, property: &str) -> Tally {
        self.tallies.get(property).copied().unwrap_or_default()
    }

    pub fn all_pass(&self) -> bool {
        self.failures.is_empty()
    }

    /// `property,pass,fail,skip` rows in [`PROPERTIES`] order.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("property,pass,fail,skip\n");
        for p in PROPERTIES {
            let t = self.tally(p);
            s.push_str(&format!("{p},{},{},{}\n", t.pass, t.fail, t.skip));
        }
        s
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(out, "{} case(s)", self.cases)?;
        for p in PROPERTIES {
            let t = self.tally(p);
            let status = if t.fail > 0 { "FAIL" } else { "ok" };
            writeln!(out, "{status:>4}  {p:<24} pass {:>6}  fail {:>4}  skip {:>6}", t.pass, t.fail, t.skip)?;
        }
        Ok(())
    }
}

/// How a spec's measure is altered before checking.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum MeasureMode {
    #[default]
    AsDeclared,
    /// Adds one to the measure of every set meeting two or more atoms.
    Corrupted,
}

fn prepare(spec: &SpecFile, mode: MeasureMode) -> crate::specfile::Model {
    let mut model = spec.build().expect("spec validated");
    if mode == MeasureMode::Corrupted {
        model.measure = model.measure.clone().with_union_defect(XReal::one());
    }
    model
}

/// Checks a single loaded spec.
pub fn check_spec(spec: &SpecFile, mode: MeasureMode) -> SuiteReport {
    let mut report = SuiteReport::default();
    report.record(0, spec, check_model(&prepare(spec, mode)));
    report
}

/// The rng for case `index` of a run seeded with `seed`.
pub fn case_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Generates `count` random cases on at most `max_size` points and checks
/// them in parallel. Results are reported in case order.
pub fn run_random(seed: u64, count: usize, max_size: usize, mode: MeasureMode) -> SuiteReport {
    let results: Vec<(SpecFile, Vec<Outcome>)> = (0..count)
        .into_par_iter()
        .map(|i| {
            let spec = random_spec(&mut case_rng(seed, i), max_size);
            let outcomes = check_model(&prepare(&spec, mode));
            (spec, outcomes)
        })
        .collect();
    let mut report = SuiteReport::default();
    for (i, (spec, outcomes)) in results.into_iter().enumerate() {
        report.record(i, &spec, outcomes);
    }
    report
}

/// A random value: zero, small integers, dyadics, other rationals and,
/// when allowed, `+∞`.
pub fn random_value<R: Rng + ?Sized>(rng: &mut R, allow_inf: bool) -> XReal {
    match rng.gen_range(0..10) {
        0 => XReal::zero(),
        1 if allow_inf => XReal::PosInf,
        1..=3 => XReal::from_int(rng.gen_range(0..5)),
        4..=6 => XReal::ratio(rng.gen_range(0..33), 1 << rng.gen_range(0..5)),
        _ => XReal::ratio(rng.gen_range(0..21), rng.gen_range(1..8)),
    }
}

fn random_atom_subset<R: Rng + ?Sized>(rng: &mut R, sa: &SigmaAlgebra) -> SubsetMask {
    let word = rng.gen::<u64>() & ((1u64 << sa.num_atoms()) - 1);
    sa.member_from_atoms(word)
}

fn labels_of(mask: &SubsetMask) -> Vec<String> {
    mask.labels().into_iter().map(str::to_string).collect()
}

fn expand(sa: &SigmaAlgebra, per_atom: &[XReal]) -> Vec<XReal> {
    (0..sa.space().size()).map(|x| per_atom[sa.atom_of(x)].clone()).collect()
}

fn random_fn_values<R: Rng + ?Sized>(rng: &mut R, sa: &SigmaAlgebra, allow_inf: bool) -> Vec<XReal> {
    let per_atom: Vec<XReal> = (0..sa.num_atoms()).map(|_| random_value(rng, allow_inf)).collect();
    expand(sa, &per_atom)
}

/// A random measurable case: space, generators and measure, functions `f`
/// and `g`, a nondecreasing sequence `up`, an arbitrary sequence `wave`, a
/// set `A`, a disjoint family `disj`, a nondecreasing family `incr`, an
/// arbitrary family `any` and a scalar `a`.
pub fn random_spec<R: Rng + ?Sized>(rng: &mut R, max_size: usize) -> SpecFile {
    let n = rng.gen_range(1..=max_size.clamp(1, 12));
    let universe: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let space = FiniteSpace::new(universe.iter().cloned()).expect("distinct labels");
    let gens: Vec<SubsetMask> = (0..rng.gen_range(0..=n.min(4)))
        .map(|_| SubsetMask::from_word(&space, rng.gen::<u64>()))
        .collect();
    let sa = generate_sigma(&space, &gens).expect("masks on the space");
    let k = sa.num_atoms();
    let allow_inf_fn = rng.gen_bool(0.5);

    let measure = match rng.gen_range(0..6) {
        0 if sa.is_discrete() => MeasureDecl::Counting,
        1 => MeasureDecl::Dirac(universe[rng.gen_range(0..n)].clone()),
        _ => {
            let per_atom: Vec<XReal> = (0..k)
                .map(|_| match rng.gen_range(0..8) {
                    0 => XReal::PosInf,
                    _ => random_value(rng, false),
                })
                .collect();
            MeasureDecl::Weights(expand(&sa, &per_atom))
        }
    };
    // a weight vector lets `g` differ from `f` only where the measure vanishes
    let null_atoms: Vec<usize> = match &measure {
        MeasureDecl::Weights(w) => (0..k)
            .filter(|&a| w[sa.atoms()[a].indices().next().expect("non-empty")].is_zero())
            .collect(),
        MeasureDecl::Dirac(l) => {
            let hit = sa.atom_of(space.index_of(l).expect("label"));
            (0..k).filter(|&a| a != hit).collect()
        }
        MeasureDecl::Counting => Vec::new(),
    };

    let f = random_fn_values(rng, &sa, allow_inf_fn);
    let g = match rng.gen_range(0..4) {
        0 => {
            let bump = random_fn_values(rng, &sa, allow_inf_fn);
            f.iter().zip(&bump).map(|(a, b)| xadd(a, b)).collect()
        }
        1 => {
            let mut g = f.clone();
            if let Some(&atom) = null_atoms.choose(rng) {
                let v = random_value(rng, allow_inf_fn);
                for x in sa.atoms()[atom].indices() {
                    g[x] = v.clone();
                }
            }
            g
        }
        _ => random_fn_values(rng, &sa, allow_inf_fn),
    };
    let mut functions = vec![("f".to_string(), f), ("g".to_string(), g)];

    let up_len = rng.gen_range(1..=3);
    let mut current = random_fn_values(rng, &sa, allow_inf_fn);
    let mut up_names = Vec::new();
    for i in 0..up_len {
        if i > 0 {
            let bump = random_fn_values(rng, &sa, allow_inf_fn);
            current = current.iter().zip(&bump).map(|(a, b)| xadd(a, b)).collect();
        }
        up_names.push(format!("u{i}"));
        functions.push((format!("u{i}"), current.clone()));
    }
    let wave_len = rng.gen_range(1..=3);
    let mut wave_names = Vec::new();
    for i in 0..wave_len {
        wave_names.push(format!("w{i}"));
        functions.push((format!("w{i}"), random_fn_values(rng, &sa, allow_inf_fn)));
    }
    // the wave alternates back to earlier members now and then
    if wave_len > 1 && rng.gen_bool(0.5) {
        wave_names.push("w0".into());
        wave_names.push(format!("w{}", wave_len - 1));
    }

    let mut sets = vec![("A".to_string(), labels_of(&random_atom_subset(rng, &sa)))];
    let mut disj = Vec::new();
    let slots = rng.gen_range(1..=3);
    let mut cells = vec![SubsetMask::empty(&space); slots];
    for atom in sa.atoms() {
        if let Some(cell) = cells.get_mut(rng.gen_range(0..=slots)) {
            *cell = cell.union(atom).expect("same space");
        }
    }
    cells.push(SubsetMask::empty(&space));
    for (i, c) in cells.iter().enumerate() {
        sets.push((format!("d{i}"), labels_of(c)));
        disj.push(format!("d{i}"));
    }
    let mut incr = Vec::new();
    let mut acc = SubsetMask::empty(&space);
    for i in 0..rng.gen_range(1..=3) {
        acc = acc.union(&random_atom_subset(rng, &sa)).expect("same space");
        sets.push((format!("i{i}"), labels_of(&acc)));
        incr.push(format!("i{i}"));
    }
    let mut any = Vec::new();
    for i in 0..rng.gen_range(1..=3) {
        sets.push((format!("b{i}"), labels_of(&random_atom_subset(rng, &sa))));
        any.push(format!("b{i}"));
    }

    let seq = |name: &str, members: Vec<String>| NamedSeq {
        name: name.to_string(),
        members,
        tail: Tail::ConstantAfterPrefix,
    };
    SpecFile {
        universe,
        generators: gens.iter().map(labels_of).collect(),
        measure,
        functions,
        sequences: vec![seq("up", up_names), seq("wave", wave_names)],
        sets,
        families: vec![seq("disj", disj), seq("incr", incr), seq("any", any)],
        scalars: vec![("a".to_string(), random_value(rng, true))],
    }
}

/// The measure of a random case.
pub fn random_measure<R: Rng + ?Sized>(rng: &mut R, max_size: usize) -> Measure {
    random_spec(rng, max_size).build().expect("generated specs are valid").measure
}

/// A random nonnegative measurable function for `sa`.
pub fn random_function<R: Rng + ?Sized>(rng: &mut R, sa: &SigmaAlgebra, allow_inf: bool) -> PointFn {
    PointFn::new(sa.space(), random_fn_values(rng, sa, allow_inf)).expect("one value per point")
}

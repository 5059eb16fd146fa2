//! Line-oriented description of a finite measure space and the objects
//! living on it.
//!
//! ```text
//! # two points, counting measure
//! universe a b
//! generator a
//! measure counting
//! function f a=1 b=inf
//! function g a=1/2 b=0
//! sequence s g f constant
//! set A a
//! family F A A constant
//! scalar k 3
//! ```
//!
//! Keywords:
//!
//! * `universe L...`: the points, first non-comment line, exactly once.
//! * `generator L...`: one generating subset per line; the σ-algebra is the
//!   one generated by all of them (no line at all gives `{∅, E}`).
//! * `measure counting`, `measure dirac L` or `measure weights L=w ...` with
//!   one weight per point, exactly once. Weights of points in the same atom
//!   must agree.
//! * `function NAME L=v ...` with one value per point.
//! * `sequence NAME FN... constant|undefined`: the listed functions followed
//!   by the tail tag.
//! * `set NAME L...` and `family NAME SET... constant|undefined`, the same
//!   for subsets.
//! * `scalar NAME v`: a nonnegative constant.
//!
//! Values are `p`, `p/q`, `inf`, `+inf` or `-inf`. Names and labels are
//! whitespace-free tokens without `=` or `#`. A name must be declared before
//! it is referenced.

use std::fmt;
use std::path::Path;

use crate::measure::Measure;
use crate::sigma::{generate_sigma, FiniteSpace, PointFn, SigmaAlgebra, Space, SubsetMask};
use crate::xreal::{Tail, TaggedSeq, XReal};
use crate::Error;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpecError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("{}{reason}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
    Validation { line: Option<usize>, reason: String },
    #[error("cannot read spec file: {0}")]
    Io(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MeasureDecl {
    Counting,
    Dirac(String),
    /// One weight per point, in universe order.
    Weights(Vec<XReal>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedSeq {
    pub name: String,
    pub members: Vec<String>,
    pub tail: Tail,
}

/// A parsed and validated spec file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecFile {
    pub universe: Vec<String>,
    pub generators: Vec<Vec<String>>,
    pub measure: MeasureDecl,
    /// Values in universe order.
    pub functions: Vec<(String, Vec<XReal>)>,
    pub sequences: Vec<NamedSeq>,
    pub sets: Vec<(String, Vec<String>)>,
    pub families: Vec<NamedSeq>,
    pub scalars: Vec<(String, XReal)>,
}

/// The objects described by a [`SpecFile`].
#[derive(Debug, Clone)]
pub struct Model {
    pub space: Space,
    pub sa: SigmaAlgebra,
    pub measure: Measure,
    pub functions: Vec<(String, PointFn)>,
    pub sequences: Vec<(String, TaggedSeq<PointFn>)>,
    pub sets: Vec<(String, SubsetMask)>,
    pub families: Vec<(String, TaggedSeq<SubsetMask>)>,
    pub scalars: Vec<(String, XReal)>,
}

fn lookup<'a, T>(items: &'a [(String, T)], name: &str) -> Option<&'a T> {
    items.iter().find(|(n, _)| n == name).map(|(_, v)| v)
}

impl Model {
    pub fn function(&self, name: &str) -> Option<&PointFn> {
        lookup(&self.functions, name)
    }

    pub fn sequence(&self, name: &str) -> Option<&TaggedSeq<PointFn>> {
        lookup(&self.sequences, name)
    }

    pub fn set(&self, name: &str) -> Option<&SubsetMask> {
        lookup(&self.sets, name)
    }

    pub fn family(&self, name: &str) -> Option<&TaggedSeq<SubsetMask>> {
        lookup(&self.families, name)
    }

    pub fn scalar(&self, name: &str) -> Option<&XReal> {
        lookup(&self.scalars, name)
    }
}

struct Parser {
    spec: SpecFile,
    have_universe: bool,
    measure_line: Option<usize>,
}

fn parse_err(line: usize, reason: impl Into<String>) -> SpecError {
    SpecError::Parse {
        line,
        reason: reason.into(),
    }
}

fn invalid(line: usize, reason: impl Into<String>) -> SpecError {
    SpecError::Validation {
        line: Some(line),
        reason: reason.into(),
    }
}

fn check_token(line: usize, tok: &str) -> Result<(), SpecError> {
    if tok.contains('=') {
        return Err(parse_err(line, format!("unexpected `=` in `{tok}`")));
    }
    Ok(())
}

fn parse_value(line: usize, tok: &str) -> Result<XReal, SpecError> {
    tok.parse::<XReal>()
        .map_err(|e| parse_err(line, e.to_string()))
}

fn parse_tail(line: usize, tok: Option<&str>) -> Result<Tail, SpecError> {
    match tok {
        Some("constant") => Ok(Tail::ConstantAfterPrefix),
        Some("undefined") => Ok(Tail::Undefined),
        Some(t) => Err(parse_err(line, format!("expected tail tag `constant` or `undefined`, found `{t}`"))),
        None => Err(parse_err(line, "missing tail tag `constant` or `undefined`")),
    }
}

impl Parser {
    fn new() -> Parser {
        Parser {
            spec: SpecFile {
                universe: Vec::new(),
                generators: Vec::new(),
                measure: MeasureDecl::Counting,
                functions: Vec::new(),
                sequences: Vec::new(),
                sets: Vec::new(),
                families: Vec::new(),
                scalars: Vec::new(),
            },
            have_universe: false,
            measure_line: None,
        }
    }

    fn label(&self, line: usize, tok: &str) -> Result<String, SpecError> {
        check_token(line, tok)?;
        if !self.spec.universe.iter().any(|l| l == tok) {
            return Err(invalid(line, format!("unknown label `{tok}`")));
        }
        Ok(tok.to_string())
    }

    /// `L=v` pairs covering every point exactly once, in universe order.
    fn assignment(&self, line: usize, toks: &[&str]) -> Result<Vec<XReal>, SpecError> {
        let mut values: Vec<Option<XReal>> = vec![None; self.spec.universe.len()];
        for tok in toks {
            let (label, value) = tok
                .split_once('=')
                .ok_or_else(|| parse_err(line, format!("expected `label=value`, found `{tok}`")))?;
            let label = self.label(line, label)?;
            let v = parse_value(line, value)?;
            let i = self.spec.universe.iter().position(|l| *l == label).expect("label checked");
            if values[i].replace(v).is_some() {
                return Err(invalid(line, format!("label `{label}` assigned twice")));
            }
        }
        values
            .into_iter()
            .zip(&self.spec.universe)
            .map(|(v, l)| v.ok_or_else(|| invalid(line, format!("no value for label `{l}`"))))
            .collect()
    }

    fn fresh_name<T>(line: usize, kind: &str, items: &[(String, T)], name: Option<&str>) -> Result<String, SpecError> {
        let name = name.ok_or_else(|| parse_err(line, format!("missing {kind} name")))?;
        check_token(line, name)?;
        if items.iter().any(|(n, _)| n == name) {
            return Err(invalid(line, format!("{kind} `{name}` declared twice")));
        }
        Ok(name.to_string())
    }

    fn named_seq(
        line: usize,
        kind: &str,
        member_kind: &str,
        existing: &[NamedSeq],
        known: &[&str],
        toks: &[&str],
    ) -> Result<NamedSeq, SpecError> {
        let Some((name, rest)) = toks.split_first() else {
            return Err(parse_err(line, format!("missing {kind} name")));
        };
        check_token(line, name)?;
        if existing.iter().any(|s| s.name == *name) {
            return Err(invalid(line, format!("{kind} `{name}` declared twice")));
        }
        let (tail_tok, members) = match rest.split_last() {
            Some((t, m)) => (Some(*t), m),
            None => (None, rest),
        };
        let tail = parse_tail(line, tail_tok)?;
        if tail == Tail::ConstantAfterPrefix && members.is_empty() {
            return Err(invalid(line, format!("{kind} `{name}` needs at least one member")));
        }
        for m in members {
            check_token(line, m)?;
            if !known.contains(m) {
                return Err(invalid(line, format!("unknown {member_kind} `{m}`")));
            }
        }
        Ok(NamedSeq {
            name: name.to_string(),
            members: members.iter().map(|m| m.to_string()).collect(),
            tail,
        })
    }

    fn line(&mut self, line: usize, text: &str) -> Result<(), SpecError> {
        let text = text.split('#').next().unwrap_or("");
        let toks: Vec<&str> = text.split_whitespace().collect();
        let Some((&keyword, args)) = toks.split_first() else {
            return Ok(());
        };
        if keyword != "universe" && !self.have_universe {
            return Err(parse_err(line, "the first declaration must be `universe`"));
        }
        match keyword {
            "universe" => {
                if self.have_universe {
                    return Err(parse_err(line, "`universe` declared twice"));
                }
                for t in args {
                    check_token(line, t)?;
                }
                FiniteSpace::new(args.iter().copied()).map_err(|e| invalid(line, e.to_string()))?;
                self.spec.universe = args.iter().map(|t| t.to_string()).collect();
                self.have_universe = true;
            }
            "generator" => {
                let set = args.iter().map(|t| self.label(line, t)).collect::<Result<_, _>>()?;
                self.spec.generators.push(set);
            }
            "measure" => {
                if self.measure_line.is_some() {
                    return Err(parse_err(line, "`measure` declared twice"));
                }
                self.spec.measure = match args {
                    ["counting"] => MeasureDecl::Counting,
                    ["dirac", l] => MeasureDecl::Dirac(self.label(line, l)?),
                    ["weights", rest @ ..] => {
                        let w = self.assignment(line, rest)?;
                        if !w.iter().all(XReal::is_nonneg) {
                            return Err(invalid(line, "weights must be nonnegative"));
                        }
                        MeasureDecl::Weights(w)
                    }
                    _ => {
                        return Err(parse_err(
                            line,
                            "expected `measure counting`, `measure dirac LABEL` or `measure weights L=w ...`",
                        ))
                    }
                };
                self.measure_line = Some(line);
            }
            "function" => {
                let name = Self::fresh_name(line, "function", &self.spec.functions, args.first().copied())?;
                let values = self.assignment(line, &args[1..])?;
                self.spec.functions.push((name, values));
            }
            "sequence" => {
                let known: Vec<&str> = self.spec.functions.iter().map(|(n, _)| n.as_str()).collect();
                let seq = Self::named_seq(line, "sequence", "function", &self.spec.sequences, &known, args)?;
                self.spec.sequences.push(seq);
            }
            "set" => {
                let name = Self::fresh_name(line, "set", &self.spec.sets, args.first().copied())?;
                let labels = args[1..].iter().map(|t| self.label(line, t)).collect::<Result<_, _>>()?;
                self.spec.sets.push((name, labels));
            }
            "family" => {
                let known: Vec<&str> = self.spec.sets.iter().map(|(n, _)| n.as_str()).collect();
                let fam = Self::named_seq(line, "family", "set", &self.spec.families, &known, args)?;
                self.spec.families.push(fam);
            }
            "scalar" => {
                let name = Self::fresh_name(line, "scalar", &self.spec.scalars, args.first().copied())?;
                let [_, v] = args else {
                    return Err(parse_err(line, "expected `scalar NAME VALUE`"));
                };
                let v = parse_value(line, v)?;
                if !v.is_nonneg() {
                    return Err(invalid(line, "scalars must be nonnegative"));
                }
                self.spec.scalars.push((name, v));
            }
            other => return Err(parse_err(line, format!("unknown keyword `{other}`"))),
        }
        Ok(())
    }
}

/// Parses and validates spec text.
pub fn parse_spec(text: &str) -> Result<SpecFile, SpecError> {
    let mut p = Parser::new();
    for (i, line) in text.lines().enumerate() {
        p.line(i + 1, line)?;
    }
    if !p.have_universe {
        return Err(SpecError::Validation {
            line: None,
            reason: "missing `universe` declaration".into(),
        });
    }
    if p.measure_line.is_none() {
        return Err(SpecError::Validation {
            line: None,
            reason: "missing `measure` declaration".into(),
        });
    }
    p.spec.build_at(p.measure_line)?;
    Ok(p.spec)
}

/// Reads and parses a spec file.
pub fn load_spec(path: impl AsRef<Path>) -> Result<SpecFile, SpecError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| SpecError::Io(format!("{}: {e}", path.display())))?;
    parse_spec(&text)
}

fn build_err(e: Error) -> SpecError {
    SpecError::Validation {
        line: None,
        reason: e.to_string(),
    }
}

fn resolve_seq<T: Clone>(s: &NamedSeq, items: &[(String, T)]) -> Result<TaggedSeq<T>, SpecError> {
    let prefix = s
        .members
        .iter()
        .map(|m| {
            lookup(items, m).cloned().ok_or_else(|| SpecError::Validation {
                line: None,
                reason: format!("`{}` references unknown `{m}`", s.name),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    TaggedSeq::new(prefix, s.tail).map_err(build_err)
}

impl SpecFile {
    /// Builds the space, σ-algebra, measure and named objects.
    pub fn build(&self) -> Result<Model, SpecError> {
        self.build_at(None)
    }

    /// [`SpecFile::build`], blaming measure errors on `measure_line`.
    fn build_at(&self, measure_line: Option<usize>) -> Result<Model, SpecError> {
        let space = FiniteSpace::new(self.universe.iter().cloned()).map_err(build_err)?;
        let gens = self
            .generators
            .iter()
            .map(|g| SubsetMask::from_labels(&space, g))
            .collect::<Result<Vec<_>, _>>()
            .map_err(build_err)?;
        let sa = generate_sigma(&space, &gens).map_err(build_err)?;
        let measure = match &self.measure {
            MeasureDecl::Counting => Measure::counting(&sa),
            MeasureDecl::Dirac(l) => Measure::dirac(&sa, l),
            MeasureDecl::Weights(w) => Measure::weighted(&sa, w),
        }
        .map_err(|e| SpecError::Validation {
            line: measure_line,
            reason: format!("measure: {e}"),
        })?;
        let functions: Vec<(String, PointFn)> = self
            .functions
            .iter()
            .map(|(n, v)| Ok((n.clone(), PointFn::new(&space, v.clone())?)))
            .collect::<Result<_, Error>>()
            .map_err(build_err)?;
        let sets: Vec<(String, SubsetMask)> = self
            .sets
            .iter()
            .map(|(n, l)| Ok((n.clone(), SubsetMask::from_labels(&space, l)?)))
            .collect::<Result<_, Error>>()
            .map_err(build_err)?;
        let sequences = self
            .sequences
            .iter()
            .map(|s| Ok((s.name.clone(), resolve_seq(s, &functions)?)))
            .collect::<Result<_, SpecError>>()?;
        let families = self
            .families
            .iter()
            .map(|s| Ok((s.name.clone(), resolve_seq(s, &sets)?)))
            .collect::<Result<_, SpecError>>()?;
        Ok(Model {
            space,
            sa,
            measure,
            functions,
            sequences,
            sets,
            families,
            scalars: self.scalars.clone(),
        })
    }
}

fn write_assignment(out: &mut fmt::Formatter<'_>, labels: &[String], values: &[XReal]) -> fmt::Result {
    for (l, v) in labels.iter().zip(values) {
        write!(out, " {l}={v}")?;
    }
    Ok(())
}

fn write_seq(out: &mut fmt::Formatter<'_>, kind: &str, s: &NamedSeq) -> fmt::Result {
    write!(out, "{kind} {}", s.name)?;
    for m in &s.members {
        write!(out, " {m}")?;
    }
    writeln!(out, " {}", s.tail)
}

/// Canonical text form, accepted back by [`parse_spec`].
impl fmt::Display for SpecFile {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(out, "universe {}", self.universe.join(" "))?;
        for g in &self.generators {
            write!(out, "generator")?;
            for l in g {
                write!(out, " {l}")?;
            }
            writeln!(out)?;
        }
        match &self.measure {
            MeasureDecl::Counting => writeln!(out, "measure counting")?,
            MeasureDecl::Dirac(l) => writeln!(out, "measure dirac {l}")?,
            MeasureDecl::Weights(w) => {
                write!(out, "measure weights")?;
                write_assignment(out, &self.universe, w)?;
                writeln!(out)?;
            }
        }
        for (n, v) in &self.functions {
            write!(out, "function {n}")?;
            write_assignment(out, &self.universe, v)?;
            writeln!(out)?;
        }
        for s in &self.sequences {
            write_seq(out, "sequence", s)?;
        }
        for (n, labels) in &self.sets {
            write!(out, "set {n}")?;
            for l in labels {
                write!(out, " {l}")?;
            }
            writeln!(out)?;
        }
        for s in &self.families {
            write_seq(out, "family", s)?;
        }
        for (n, v) in &self.scalars {
            writeln!(out, "scalar {n} {v}")?;
        }
        Ok(())
    }
}

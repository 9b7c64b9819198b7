use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::EngineError;
use crate::arith::{ArithError, MultiPoly, RatFunc};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Atom {
    pub name: String,
    /// Free-text restriction, e.g. `0 < theta < pi/4`.
    pub domain: Option<String>,
    /// Figure quantity this atom stands for in numeric cross-checks.
    pub bind: Option<String>,
}

#[derive(Clone, PartialEq)]
pub struct Equation {
    pub label: String,
    pub lhs: RatFunc,
    pub rhs: RatFunc,
}

impl Equation {
    pub fn new(label: impl Into<String>, lhs: RatFunc, rhs: RatFunc) -> Self {
        Equation { label: label.into(), lhs, rhs }
    }

    pub fn residual(&self) -> RatFunc {
        self.lhs.sub(&self.rhs)
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut v = self.lhs.vars();
        v.extend(self.rhs.vars());
        v
    }

    pub fn contains_var(&self, var: &str) -> bool {
        self.lhs.contains_var(var) || self.rhs.contains_var(var)
    }

    pub fn substitute(&self, bindings: &BTreeMap<String, RatFunc>) -> Result<Equation, ArithError> {
        Ok(Equation {
            label: self.label.clone(),
            lhs: self.lhs.substitute(bindings)?,
            rhs: self.rhs.substitute(bindings)?,
        })
    }

    pub fn denominators(&self) -> [&MultiPoly; 2] {
        [self.lhs.den(), self.rhs.den()]
    }

    /// Numeric residual `|lhs - rhs|` at a floating-point assignment.
    pub fn residual_f64(&self, env: &BTreeMap<String, f64>) -> Result<f64, ArithError> {
        Ok(libm::fabs(self.lhs.eval_f64(env)? - self.rhs.eval_f64(env)?))
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

impl fmt::Debug for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.label, self)
    }
}

/// Oriented fact `target := replacement`, valid where every polynomial in
/// `nonvanishing` is nonzero.
#[derive(Clone, Debug)]
pub struct Hypothesis {
    target: String,
    replacement: RatFunc,
    nonvanishing: Vec<MultiPoly>,
}

impl Hypothesis {
    pub fn new(target: impl Into<String>, replacement: RatFunc, nonvanishing: Vec<MultiPoly>) -> Result<Self, EngineError> {
        let target = target.into();
        if replacement.contains_var(&target) {
            return Err(EngineError::SelfReference(target));
        }
        Ok(Hypothesis { target, replacement, nonvanishing })
    }

    pub fn target(&self) -> &str {
        &self.target
    }

    pub fn replacement(&self) -> &RatFunc {
        &self.replacement
    }

    pub fn nonvanishing(&self) -> &[MultiPoly] {
        &self.nonvanishing
    }

    pub fn as_equation(&self) -> Equation {
        Equation::new(self.target.clone(), RatFunc::var(&self.target), self.replacement.clone())
    }
}

/// Polynomials declared nonzero on the domain of a script.
#[derive(Clone, Debug, Default)]
pub struct NonzeroSet {
    polys: Vec<MultiPoly>,
}

impl NonzeroSet {
    pub fn new() -> Self {
        NonzeroSet::default()
    }

    pub fn from_polys<'a>(polys: impl IntoIterator<Item = &'a MultiPoly>) -> Self {
        let mut s = NonzeroSet::new();
        for p in polys {
            s.insert(p);
        }
        s
    }

    /// Records `p != 0`. Constants carry no information and are skipped.
    pub fn insert(&mut self, p: &MultiPoly) {
        if p.as_constant().is_some() {
            return;
        }
        let prim = p.primitive();
        if !self.polys.contains(&prim) {
            self.polys.push(prim);
        }
    }

    pub fn extend(&mut self, other: &NonzeroSet) {
        for p in &other.polys {
            self.insert(p);
        }
    }

    pub fn polys(&self) -> &[MultiPoly] {
        &self.polys
    }

    /// Strips every declared factor from `p` (repeatedly) and returns what is left.
    pub fn strip(&self, p: &MultiPoly) -> MultiPoly {
        let mut rest = p.primitive();
        loop {
            let mut changed = false;
            for d in &self.polys {
                while rest.as_constant().is_none() {
                    match rest.exact_div(d) {
                        Some(q) => {
                            rest = q;
                            changed = true;
                        }
                        None => break,
                    }
                }
            }
            if !changed {
                return rest;
            }
        }
    }

    /// True iff `p` is a nonzero constant times a product of declared polynomials.
    pub fn covers(&self, p: &MultiPoly) -> bool {
        if p.is_zero() {
            return false;
        }
        self.strip(p).as_constant().is_some()
    }

    /// Cancels declared factors shared by `num` and `den`.
    pub fn cancel_common(&self, num: &MultiPoly, den: &MultiPoly) -> (MultiPoly, MultiPoly) {
        let mut n = num.clone();
        let mut d = den.clone();
        for p in &self.polys {
            loop {
                if n.is_zero() {
                    break;
                }
                match (n.exact_div(p), d.exact_div(p)) {
                    (Some(nq), Some(dq)) => {
                        n = nq;
                        d = dq;
                    }
                    _ => break,
                }
            }
        }
        (n, d)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum StepKind {
    Substitute,
    Ring,
    DivideBy,
    InstantiateLemma,
}

impl StepKind {
    pub fn as_str(self) -> &'static str {
        match self {
            StepKind::Substitute => "substitute",
            StepKind::Ring => "ring",
            StepKind::DivideBy => "divide_by",
            StepKind::InstantiateLemma => "instantiate_lemma",
        }
    }
}

#[derive(Clone, Debug)]
pub enum Justification {
    Ring,
    /// Rewrite an established equation with the hypotheses in scope, or with
    /// explicit bindings when given.
    Substitute { source: String, bindings: Vec<(String, RatFunc)> },
    DivideBy(MultiPoly),
    Lemma { id: String, bindings: Vec<(String, RatFunc)> },
}

impl Justification {
    pub fn kind(&self) -> StepKind {
        match self {
            Justification::Ring => StepKind::Ring,
            Justification::Substitute { .. } => StepKind::Substitute,
            Justification::DivideBy(_) => StepKind::DivideBy,
            Justification::Lemma { .. } => StepKind::InstantiateLemma,
        }
    }
}

fn write_bindings(f: &mut fmt::Formatter<'_>, bindings: &[(String, RatFunc)]) -> fmt::Result {
    if bindings.is_empty() {
        return Ok(());
    }
    f.write_str(" with ")?;
    for (k, (a, e)) in bindings.iter().enumerate() {
        if k > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{a}={e}")?;
    }
    Ok(())
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::Ring => f.write_str("ring"),
            Justification::Substitute { source, bindings } => {
                write!(f, "substitute({source}")?;
                write_bindings(f, bindings)?;
                f.write_str(")")
            }
            Justification::DivideBy(p) => write!(f, "divide_by({p})"),
            Justification::Lemma { id, bindings } => {
                write!(f, "lemma({id}")?;
                write_bindings(f, bindings)?;
                f.write_str(")")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct Step {
    pub label: String,
    pub equation: Equation,
    pub justification: Justification,
    pub line: usize,
}

impl Step {
    pub fn kind(&self) -> StepKind {
        self.justification.kind()
    }
}

#[derive(Clone, Debug)]
pub struct HypDecl {
    pub hyp: Hypothesis,
    pub by: Vec<String>,
    pub line: usize,
}

#[derive(Clone, Debug)]
pub struct GivenDecl {
    pub equation: Equation,
    pub by: Vec<String>,
    pub line: usize,
}

#[derive(Clone, Debug)]
pub enum Item {
    Nonzero(Vec<MultiPoly>),
    Hyp(HypDecl),
    Given(GivenDecl),
    Step(Step),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ScriptKind {
    Derived,
    Theorem,
}

impl ScriptKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ScriptKind::Derived => "derived",
            ScriptKind::Theorem => "theorem",
        }
    }
}

/// One derivation chain: declarations, givens and ordered steps.
#[derive(Clone, Debug)]
pub struct ProofScript {
    pub id: String,
    pub kind: ScriptKind,
    pub tags: Vec<String>,
    pub depends: Vec<String>,
    pub figure: Option<String>,
    pub atoms: Vec<Atom>,
    pub items: Vec<Item>,
    /// Label of the final step.
    pub conclusion: String,
}

impl ProofScript {
    pub fn steps(&self) -> impl Iterator<Item = &Step> {
        self.items.iter().filter_map(|i| match i {
            Item::Step(s) => Some(s),
            _ => None,
        })
    }

    pub fn conclusion_equation(&self) -> &Equation {
        &self
            .steps()
            .find(|s| s.label == self.conclusion)
            .expect("parser guarantees the conclusion names a step")
            .equation
    }

    /// Every lemma or axiom id the script cites.
    pub fn invoked(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for item in &self.items {
            match item {
                Item::Hyp(h) => out.extend(h.by.iter().cloned()),
                Item::Given(g) => out.extend(g.by.iter().cloned()),
                Item::Step(Step { justification: Justification::Lemma { id, .. }, .. }) => {
                    out.insert(id.clone());
                }
                _ => {}
            }
        }
        out
    }

    pub fn atom(&self, name: &str) -> Option<&Atom> {
        self.atoms.iter().find(|a| a.name == name)
    }

    pub fn has_tag(&self, tag: &str) -> bool {
        self.tags.iter().any(|t| t == tag)
    }

    /// Every equation the script states: hypotheses, givens and steps.
    pub fn equations(&self) -> Vec<Equation> {
        self.items
            .iter()
            .filter_map(|i| match i {
                Item::Hyp(h) => Some(h.hyp.as_equation()),
                Item::Given(g) => Some(g.equation.clone()),
                Item::Step(s) => Some(s.equation.clone()),
                Item::Nonzero(_) => None,
            })
            .collect()
    }

    /// The equation stated under `label`; hypotheses are labelled by their
    /// target atom.
    pub fn entry(&self, label: &str) -> Option<Equation> {
        self.items.iter().find_map(|i| match i {
            Item::Hyp(h) if h.hyp.target() == label => Some(h.hyp.as_equation()),
            Item::Given(g) if g.equation.label == label => Some(g.equation.clone()),
            Item::Step(s) if s.label == label => Some(s.equation.clone()),
            _ => None,
        })
    }

    /// Every polynomial declared nonzero anywhere in the script.
    pub fn declared_nonzero(&self) -> Vec<MultiPoly> {
        let mut out = Vec::new();
        for item in &self.items {
            match item {
                Item::Nonzero(ps) => out.extend(ps.iter().cloned()),
                Item::Hyp(h) => out.extend(h.hyp.nonvanishing().iter().cloned()),
                _ => {}
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct AxiomDecl {
    pub id: String,
    pub tags: Vec<String>,
    pub atoms: Vec<Atom>,
    /// Representative statement, for axioms that have an algebraic form.
    pub statement: Option<Equation>,
}

#[derive(Clone, Debug)]
pub struct FactDecl {
    pub equation: Equation,
    pub by: Vec<String>,
    pub line: usize,
}

/// Bundle of geometric facts read off one figure, each justified by
/// primitive axioms.
#[derive(Clone, Debug)]
pub struct CompositeDecl {
    pub id: String,
    pub tags: Vec<String>,
    pub figure: Option<String>,
    pub atoms: Vec<Atom>,
    pub nonzero: Vec<MultiPoly>,
    pub facts: Vec<FactDecl>,
}

impl CompositeDecl {
    pub fn invoked(&self) -> BTreeSet<String> {
        self.facts.iter().flat_map(|f| f.by.iter().cloned()).collect()
    }
}

#[derive(Clone, Debug)]
pub enum LemmaSource {
    Axiom(AxiomDecl),
    Composite(CompositeDecl),
    Script(ProofScript),
}

impl LemmaSource {
    pub fn id(&self) -> &str {
        match self {
            LemmaSource::Axiom(a) => &a.id,
            LemmaSource::Composite(c) => &c.id,
            LemmaSource::Script(s) => &s.id,
        }
    }
}

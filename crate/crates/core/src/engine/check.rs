//! Step checking in the consequence calculus.
//!
//! Every equation is reduced to a primitive residual numerator. A goal is
//! entailed by a basis when multivariate division leaves no remainder, after
//! optionally eliminating atoms that occur linearly in a basis element with a
//! coefficient known to be nonzero.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use super::script::*;
use super::EngineError;
use crate::arith::{MultiPoly, RatFunc};

/// How a lemma id resolves for the script being checked.
#[derive(Debug, Clone, Copy)]
pub enum Resolved<'a> {
    Unknown,
    /// Trusted axiom, with its representative statement if it has one.
    Primitive(Option<&'a Equation>),
    /// Bundle of figure facts and the polynomials they assume nonzero.
    Facts { facts: &'a [Equation], nonzero: &'a [MultiPoly] },
    /// Conclusion of a verified script.
    Statement(&'a Equation),
    /// A script that exists but did not verify.
    NotVerified,
}

pub trait LemmaContext {
    fn resolve(&self, id: &str) -> Resolved<'_>;
}

/// Context in which no lemma resolves; scripts checked here may only use `ring`
/// and local substitutions.
pub struct NoLemmas;

impl LemmaContext for NoLemmas {
    fn resolve(&self, _id: &str) -> Resolved<'_> {
        Resolved::Unknown
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rejection {
    NotEntailed,
    UnjustifiedDivision(String),
    UnknownLemma(String),
    LemmaNotVerified(String),
    NoStatement(String),
    UnsupportedFact,
    DivisorNotDeclared(String),
    TargetNotEliminated(String),
    UnboundSource(String),
    PrecedingFailure,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::NotEntailed => f.write_str("not entailed by the established equations"),
            Rejection::UnjustifiedDivision(p) => write!(f, "UnjustifiedDivision: `{p}` is not declared nonzero"),
            Rejection::UnknownLemma(id) => write!(f, "UnknownLemma({id})"),
            Rejection::LemmaNotVerified(id) => write!(f, "lemma `{id}` did not verify"),
            Rejection::NoStatement(id) => write!(f, "`{id}` has no statement to instantiate"),
            Rejection::UnsupportedFact => f.write_str("no cited source supports this equation"),
            Rejection::DivisorNotDeclared(p) => write!(f, "divisor `{p}` is not declared nonzero"),
            Rejection::TargetNotEliminated(a) => write!(f, "substituted atom `{a}` still occurs in the step"),
            Rejection::UnboundSource(l) => write!(f, "`{l}` is not an established equation"),
            Rejection::PrecedingFailure => f.write_str("skipped after an earlier rejection"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Accepted,
    Rejected { reason: Rejection, residual: Option<String> },
    Skipped,
}

impl Verdict {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Verdict::Accepted)
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Accepted => "accepted",
            Verdict::Rejected { .. } => "rejected",
            Verdict::Skipped => "skipped",
        }
    }

    fn reject(reason: Rejection) -> Verdict {
        Verdict::Rejected { reason, residual: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntryKind {
    Hyp,
    Given,
    Step(StepKind),
}

impl EntryKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EntryKind::Hyp => "hyp",
            EntryKind::Given => "given",
            EntryKind::Step(k) => k.as_str(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryReport {
    pub label: String,
    pub kind: EntryKind,
    pub line: usize,
    pub equation: String,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub id: String,
    pub kind: ScriptKind,
    pub tags: Vec<String>,
    pub entries: Vec<EntryReport>,
    pub conclusion: String,
    pub invoked: BTreeSet<String>,
    pub accepted: bool,
}

impl VerifyReport {
    pub fn first_rejection(&self) -> Option<&EntryReport> {
        self.entries.iter().find(|e| matches!(e.verdict, Verdict::Rejected { .. }))
    }
}

/// Declarations and equations available at a point in a script.
#[derive(Clone, Debug, Default)]
pub struct Scope {
    pub nonzero: NonzeroSet,
    pub hyps: Vec<Hypothesis>,
    pub established: Vec<(String, Equation, MultiPoly)>,
}

impl Scope {
    pub fn new() -> Self {
        Scope::default()
    }

    pub fn basis(&self) -> Vec<MultiPoly> {
        self.established.iter().map(|(_, _, r)| r.clone()).collect()
    }

    pub fn lookup(&self, label: &str) -> Option<&Equation> {
        self.established.iter().find(|(l, _, _)| l == label).map(|(_, e, _)| e)
    }

    /// Adds an equation whose denominators are covered; returns its residual.
    pub fn establish(&mut self, eq: &Equation) -> Result<MultiPoly, EngineError> {
        let r = residual(eq, &self.nonzero)?;
        self.established.push((eq.label.clone(), eq.clone(), r.clone()));
        Ok(r)
    }
}

/// Primitive numerator of `lhs - rhs`, after cancelling declared factors it
/// shares with the denominator. Fails if a denominator is not covered.
pub fn residual(eq: &Equation, nz: &NonzeroSet) -> Result<MultiPoly, EngineError> {
    for d in eq.denominators() {
        if d.as_constant().is_none() && !nz.covers(d) {
            return Err(EngineError::UnjustifiedDivision(d.to_string()));
        }
    }
    let r = eq.residual();
    let (n, _) = nz.cancel_common(r.num(), r.den());
    Ok(n.primitive())
}

fn reduces(goal: &MultiPoly, basis: &[MultiPoly]) -> bool {
    goal.is_zero() || goal.reduce(basis).is_zero() || basis.iter().any(|b| goal.reduce(core::slice::from_ref(b)).is_zero())
}

type Pivot = (usize, String, MultiPoly, MultiPoly);

/// Eliminable atoms, best first: atoms absent from the goal, then constant
/// coefficients, then basis order.
fn pivots(basis: &[MultiPoly], goal: &MultiPoly, nz: &NonzeroSet) -> Vec<Pivot> {
    let mut out: Vec<((bool, bool, usize, String), MultiPoly, MultiPoly)> = Vec::new();
    for (i, b) in basis.iter().enumerate() {
        for v in b.vars() {
            if b.degree_in(&v) != 1 {
                continue;
            }
            let mut coeffs = b.coefficients_in(&v);
            let coef = coeffs.remove(&1).unwrap_or_default();
            let is_const = coef.as_constant().is_some();
            if !is_const && !nz.covers(&coef) {
                continue;
            }
            let rest = coeffs.remove(&0).unwrap_or_default();
            out.push(((!goal.contains_var(&v), !is_const, i, v), coef, rest));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out.into_iter().map(|((_, _, i, v), coef, rest)| (i, v, coef, rest)).collect()
}

/// Upper bound on elimination states explored by [`entails`].
const SEARCH_BUDGET: usize = 500;

fn eliminate(basis: &[MultiPoly], goal: &MultiPoly, p: &Pivot) -> (Vec<MultiPoly>, MultiPoly) {
    let (i, v, coef, rest) = p;
    let mut binding = BTreeMap::new();
    binding.insert(v.clone(), (-rest, coef.clone()));
    let pivot_nz = NonzeroSet::from_polys([coef]);
    let goal = goal.substitute_homogeneous(&binding).0.primitive();
    let basis = basis
        .iter()
        .enumerate()
        .filter(|(j, _)| j != i)
        .map(|(_, b)| pivot_nz.strip(&b.substitute_homogeneous(&binding).0))
        .filter(|b| !b.is_zero())
        .collect();
    (basis, goal)
}

fn search(basis: &[MultiPoly], goal: &MultiPoly, nz: &NonzeroSet, budget: &mut usize, first_failure: &mut Option<MultiPoly>) -> bool {
    if reduces(goal, basis) || reduces(&nz.strip(goal), basis) {
        return true;
    }
    let candidates = pivots(basis, goal, nz);
    if candidates.is_empty() && first_failure.is_none() {
        let rem = goal.reduce(basis);
        *first_failure = Some(if rem.is_zero() { goal.clone() } else { rem.primitive() });
    }
    for p in &candidates {
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        let (next_basis, next_goal) = eliminate(basis, goal, p);
        if search(&next_basis, &next_goal, nz, budget, first_failure) {
            return true;
        }
    }
    false
}

/// Decides whether `goal = 0` follows from `basis = 0` under the nonzero
/// declarations, searching over elimination orders. On failure returns the
/// remainder reached along the preferred order.
pub fn entails(basis: &[MultiPoly], goal: &MultiPoly, nz: &NonzeroSet) -> Result<(), MultiPoly> {
    let basis: Vec<MultiPoly> = basis.iter().filter(|b| !b.is_zero()).map(|b| b.primitive()).collect();
    let goal = goal.primitive();
    let mut budget = SEARCH_BUDGET;
    let mut failure = None;
    if search(&basis, &goal, nz, &mut budget, &mut failure) {
        Ok(())
    } else {
        Err(failure.unwrap_or_else(|| goal.reduce(&basis).primitive()))
    }
}

/// Mutual entailment of two equations.
pub fn equivalent(a: &Equation, b: &Equation, nz: &NonzeroSet) -> bool {
    match (residual(a, nz), residual(b, nz)) {
        (Ok(ra), Ok(rb)) => entails(core::slice::from_ref(&ra), &rb, nz).is_ok() && entails(core::slice::from_ref(&rb), &ra, nz).is_ok(),
        _ => false,
    }
}

/// Rewrites `target := replacement` throughout `e`. Every denominator of the
/// result must be covered by `nz` together with the hypothesis' own
/// nonvanishing declarations.
pub fn apply_hypothesis(e: &Equation, h: &Hypothesis, nz: &NonzeroSet) -> Result<Equation, EngineError> {
    if !e.contains_var(h.target()) {
        return Ok(e.clone());
    }
    let mut scope = nz.clone();
    for p in h.nonvanishing() {
        scope.insert(p);
    }
    let rd = h.replacement().den();
    if rd.as_constant().is_none() && !scope.covers(rd) {
        return Err(EngineError::UnjustifiedDivision(rd.to_string()));
    }
    let mut map = BTreeMap::new();
    map.insert(h.target().to_string(), h.replacement().clone());
    let out = e.substitute(&map)?;
    for d in out.denominators() {
        if d.as_constant().is_none() && !scope.covers(d) {
            return Err(EngineError::UnjustifiedDivision(d.to_string()));
        }
    }
    Ok(out)
}

fn rejected(reason: Rejection, residual: &MultiPoly) -> Verdict {
    Verdict::Rejected { reason, residual: Some(residual.to_string()) }
}

fn from_engine(e: EngineError) -> Verdict {
    match e {
        EngineError::UnjustifiedDivision(p) => Verdict::reject(Rejection::UnjustifiedDivision(p)),
        other => Verdict::reject(Rejection::UnjustifiedDivision(other.to_string())),
    }
}

fn check_entailed(basis: &[MultiPoly], goal: &MultiPoly, nz: &NonzeroSet) -> Verdict {
    match entails(basis, goal, nz) {
        Ok(()) => Verdict::Accepted,
        Err(rem) => rejected(Rejection::NotEntailed, &rem),
    }
}

fn binding_map(bindings: &[(String, RatFunc)], nz: &NonzeroSet) -> Result<BTreeMap<String, RatFunc>, Verdict> {
    let mut map = BTreeMap::new();
    for (atom, value) in bindings {
        let d = value.den();
        if d.as_constant().is_none() && !nz.covers(d) {
            return Err(Verdict::reject(Rejection::UnjustifiedDivision(d.to_string())));
        }
        map.insert(atom.clone(), value.clone());
    }
    Ok(map)
}

/// Checks one step against the scope. Does not modify the scope.
pub fn check_step(scope: &Scope, step: &Step, ctx: &dyn LemmaContext) -> Verdict {
    let nz = &scope.nonzero;
    let goal = match residual(&step.equation, nz) {
        Ok(g) => g,
        Err(e) => return from_engine(e),
    };
    match &step.justification {
        Justification::Ring => check_entailed(&scope.basis(), &goal, nz),
        Justification::DivideBy(p) => {
            if p.as_constant().is_none_or(|c| c.is_zero()) && !nz.covers(p) {
                return Verdict::reject(Rejection::DivisorNotDeclared(p.to_string()));
            }
            check_entailed(&scope.basis(), &(p * &goal), nz)
        }
        Justification::Substitute { source, bindings } => {
            let Some(src) = scope.lookup(source) else {
                return Verdict::reject(Rejection::UnboundSource(source.clone()));
            };
            let rewritten = if bindings.is_empty() {
                let mut eq = src.clone();
                for h in &scope.hyps {
                    if !eq.contains_var(h.target()) {
                        continue;
                    }
                    eq = match apply_hypothesis(&eq, h, nz) {
                        Ok(e) => e,
                        Err(e) => return from_engine(e),
                    };
                    if step.equation.contains_var(h.target()) {
                        return Verdict::reject(Rejection::TargetNotEliminated(h.target().to_string()));
                    }
                }
                eq
            } else {
                let map = match binding_map(bindings, nz) {
                    Ok(m) => m,
                    Err(v) => return v,
                };
                match src.substitute(&map) {
                    Ok(e) => e,
                    Err(_) => return Verdict::reject(Rejection::UnjustifiedDivision("0".to_string())),
                }
            };
            match residual(&rewritten, nz) {
                Ok(r) => check_entailed(&[r], &goal, nz),
                Err(e) => from_engine(e),
            }
        }
        Justification::Lemma { id, bindings } => {
            let statement = match ctx.resolve(id) {
                Resolved::Statement(s) | Resolved::Primitive(Some(s)) => s,
                Resolved::Primitive(None) | Resolved::Facts { .. } => {
                    return Verdict::reject(Rejection::NoStatement(id.clone()))
                }
                Resolved::NotVerified => return Verdict::reject(Rejection::LemmaNotVerified(id.clone())),
                Resolved::Unknown => return Verdict::reject(Rejection::UnknownLemma(id.clone())),
            };
            let map = match binding_map(bindings, nz) {
                Ok(m) => m,
                Err(v) => return v,
            };
            let instance = match statement.substitute(&map) {
                Ok(e) => e,
                Err(_) => return Verdict::reject(Rejection::UnjustifiedDivision("0".to_string())),
            };
            match residual(&instance, nz) {
                Ok(r) => check_entailed(&[r], &goal, nz),
                Err(e) => from_engine(e),
            }
        }
    }
}

/// Checks that at least one cited source supports `eq`.
fn check_support(eq: &Equation, by: &[String], nz: &NonzeroSet, ctx: &dyn LemmaContext) -> Verdict {
    if let Err(e) = residual(eq, nz) {
        return from_engine(e);
    }
    let mut failure = Verdict::reject(Rejection::UnsupportedFact);
    for id in by {
        match ctx.resolve(id) {
            Resolved::Primitive(_) => return Verdict::Accepted,
            Resolved::Facts { facts, nonzero } => {
                let mut scope = nz.clone();
                for p in nonzero {
                    scope.insert(p);
                }
                if facts.iter().any(|f| equivalent(eq, f, &scope)) {
                    return Verdict::Accepted;
                }
            }
            Resolved::Statement(s) => {
                if equivalent(eq, s, nz) {
                    return Verdict::Accepted;
                }
            }
            Resolved::NotVerified => failure = Verdict::reject(Rejection::LemmaNotVerified(id.clone())),
            Resolved::Unknown => failure = Verdict::reject(Rejection::UnknownLemma(id.clone())),
        }
    }
    failure
}

/// Verifies a whole script. Entries after the first rejection are skipped.
pub fn verify_script(script: &ProofScript, ctx: &dyn LemmaContext) -> VerifyReport {
    let mut scope = Scope::new();
    let mut entries = Vec::new();
    let mut failed = false;
    for item in &script.items {
        let (label, kind, line, equation, verdict) = match item {
            Item::Nonzero(ps) => {
                for p in ps {
                    scope.nonzero.insert(p);
                }
                continue;
            }
            Item::Hyp(h) => {
                for p in h.hyp.nonvanishing() {
                    scope.nonzero.insert(p);
                }
                let eq = h.hyp.as_equation();
                let verdict = if failed { Verdict::Skipped } else { check_support(&eq, &h.by, &scope.nonzero, ctx) };
                if verdict.is_accepted() {
                    scope.hyps.push(h.hyp.clone());
                }
                (h.hyp.target().to_string(), EntryKind::Hyp, h.line, format!("{} := {}", h.hyp.target(), h.hyp.replacement()), verdict)
            }
            Item::Given(g) => {
                let verdict = if failed { Verdict::Skipped } else { check_support(&g.equation, &g.by, &scope.nonzero, ctx) };
                if verdict.is_accepted() {
                    if let Err(e) = scope.establish(&g.equation) {
                        failed = true;
                        entries.push(EntryReport {
                            label: g.equation.label.clone(),
                            kind: EntryKind::Given,
                            line: g.line,
                            equation: g.equation.to_string(),
                            verdict: from_engine(e),
                        });
                        continue;
                    }
                }
                (g.equation.label.clone(), EntryKind::Given, g.line, g.equation.to_string(), verdict)
            }
            Item::Step(s) => {
                let verdict = if failed { Verdict::Skipped } else { check_step(&scope, s, ctx) };
                if verdict.is_accepted() {
                    scope.establish(&s.equation).expect("accepted steps have covered denominators");
                }
                (s.label.clone(), EntryKind::Step(s.kind()), s.line, s.equation.to_string(), verdict)
            }
        };
        if matches!(verdict, Verdict::Rejected { .. }) {
            failed = true;
        }
        entries.push(EntryReport { label, kind, line, equation, verdict });
    }
    let concluded = script.steps().last().is_some_and(|s| s.label == script.conclusion);
    VerifyReport {
        id: script.id.clone(),
        kind: script.kind,
        tags: script.tags.clone(),
        conclusion: script.conclusion_equation().to_string(),
        invoked: script.invoked(),
        accepted: !failed && concluded,
        entries,
    }
}

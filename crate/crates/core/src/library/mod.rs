//! The lemma registry, the shipped catalog and the end-to-end pipelines
//! built on it.

mod coverage;
mod numeric;
mod pipeline;
mod shipped;

pub use coverage::{DisplayedEquation, COVERAGE};
pub use numeric::{cross_check, CrossCheck, CrossCheckError};
pub use pipeline::{
    derive_tan_double_angle, prove_pythagoras, solve_exercise, DoubleAngleDerivation, ExerciseSolution, UnknownVariant,
    Variant,
};
pub use shipped::SHIPPED;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::engine::{
    parse_lemma, verify_script, Equation, LemmaContext, LemmaSource, ParseError, ProofScript, Resolved, ScriptKind,
    VerifyReport,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum LemmaKind {
    Axiom,
    /// Bundle of figure facts justified by primitive axioms.
    Composite,
    Derived,
    Theorem,
}

impl LemmaKind {
    pub fn as_str(self) -> &'static str {
        match self {
            LemmaKind::Axiom => "axiom",
            LemmaKind::Composite => "composite",
            LemmaKind::Derived => "derived",
            LemmaKind::Theorem => "theorem",
        }
    }
}

impl fmt::Display for LemmaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone)]
pub struct Lemma {
    pub id: String,
    pub kind: LemmaKind,
    pub tags: Vec<String>,
    pub source: LemmaSource,
    /// Declared dependencies, sorted. For composites these are the axioms
    /// cited by their facts.
    pub depends: Vec<String>,
    pub figure: Option<String>,
    facts: Vec<Equation>,
}

impl Lemma {
    fn new(source: LemmaSource) -> Lemma {
        let (kind, tags, depends, figure, facts) = match &source {
            LemmaSource::Axiom(a) => (LemmaKind::Axiom, a.tags.clone(), Vec::new(), None, Vec::new()),
            LemmaSource::Composite(c) => (
                LemmaKind::Composite,
                c.tags.clone(),
                c.invoked().into_iter().collect(),
                c.figure.clone(),
                c.facts.iter().map(|f| f.equation.clone()).collect(),
            ),
            LemmaSource::Script(s) => {
                let kind = match s.kind {
                    ScriptKind::Theorem => LemmaKind::Theorem,
                    ScriptKind::Derived => LemmaKind::Derived,
                };
                let depends: BTreeSet<String> = s.depends.iter().cloned().collect();
                (kind, s.tags.clone(), depends.into_iter().collect(), s.figure.clone(), Vec::new())
            }
        };
        Lemma { id: source.id().to_string(), kind, tags, source, depends, figure, facts }
    }

    pub fn script(&self) -> Option<&ProofScript> {
        match &self.source {
            LemmaSource::Script(s) => Some(s),
            _ => None,
        }
    }

    /// The lemma's statement: the conclusion of a script, or an axiom's
    /// representative statement.
    pub fn statement(&self) -> Option<&Equation> {
        match &self.source {
            LemmaSource::Script(s) => Some(s.conclusion_equation()),
            LemmaSource::Axiom(a) => a.statement.as_ref(),
            LemmaSource::Composite(_) => None,
        }
    }

    pub fn has_tag(&self, tag: &str) -> bool {
        self.tags.iter().any(|t| t == tag)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LoadError {
    #[error("{file}: {error}")]
    Parse { file: String, error: ParseError },
    #[error("file `{file}` declares lemma `{id}`")]
    FileNameMismatch { file: String, id: String },
    #[error("DuplicateLemma({0})")]
    DuplicateLemma(String),
    #[error("DanglingReference({lemma} -> {missing})")]
    DanglingReference { lemma: String, missing: String },
    #[error("DependencyMismatch({lemma}): undeclared {missing:?}, unused {extra:?}")]
    DependencyMismatch { lemma: String, missing: Vec<String>, extra: Vec<String> },
    #[error("composite `{lemma}` cites `{cited}`, which is not an axiom")]
    CompositeJustification { lemma: String, cited: String },
}

/// Lemmas in load order, indexed by id.
#[derive(Debug, Clone, Default)]
pub struct Registry {
    lemmas: Vec<Lemma>,
    index: BTreeMap<String, usize>,
}

impl Registry {
    pub fn empty() -> Registry {
        Registry::default()
    }

    /// Loads the catalog compiled into the crate.
    pub fn shipped() -> Result<Registry, LoadError> {
        Registry::from_sources(SHIPPED.iter().copied())
    }

    /// Loads `(file stem, source)` pairs. The stem must equal the declared id.
    pub fn from_sources<'a>(sources: impl IntoIterator<Item = (&'a str, &'a str)>) -> Result<Registry, LoadError> {
        let mut parsed = Vec::new();
        for (file, text) in sources {
            let source = parse_lemma(text).map_err(|error| LoadError::Parse { file: file.to_string(), error })?;
            if source.id() != file {
                return Err(LoadError::FileNameMismatch { file: file.to_string(), id: source.id().to_string() });
            }
            parsed.push(source);
        }
        Registry::from_parsed(parsed)
    }

    pub fn from_parsed(sources: Vec<LemmaSource>) -> Result<Registry, LoadError> {
        let mut reg = Registry::empty();
        for s in sources {
            let id = s.id().to_string();
            if reg.index.contains_key(&id) {
                return Err(LoadError::DuplicateLemma(id));
            }
            reg.index.insert(id, reg.lemmas.len());
            reg.lemmas.push(Lemma::new(s));
        }
        reg.check_references()?;
        Ok(reg)
    }

    fn check_references(&self) -> Result<(), LoadError> {
        for lemma in &self.lemmas {
            match &lemma.source {
                LemmaSource::Axiom(_) => {}
                LemmaSource::Composite(c) => {
                    for cited in c.invoked() {
                        match self.get(&cited) {
                            None => return Err(LoadError::DanglingReference { lemma: lemma.id.clone(), missing: cited }),
                            Some(l) if l.kind != LemmaKind::Axiom => {
                                return Err(LoadError::CompositeJustification { lemma: lemma.id.clone(), cited })
                            }
                            Some(_) => {}
                        }
                    }
                }
                LemmaSource::Script(s) => {
                    let invoked = s.invoked();
                    for id in invoked.iter().chain(&lemma.depends) {
                        if !self.index.contains_key(id) {
                            return Err(LoadError::DanglingReference { lemma: lemma.id.clone(), missing: id.clone() });
                        }
                    }
                    let declared: BTreeSet<String> = lemma.depends.iter().cloned().collect();
                    if declared != invoked {
                        return Err(LoadError::DependencyMismatch {
                            lemma: lemma.id.clone(),
                            missing: invoked.difference(&declared).cloned().collect(),
                            extra: declared.difference(&invoked).cloned().collect(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.lemmas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lemmas.is_empty()
    }

    pub fn lemmas(&self) -> &[Lemma] {
        &self.lemmas
    }

    pub fn get(&self, id: &str) -> Option<&Lemma> {
        self.index.get(id).map(|&i| &self.lemmas[i])
    }

    pub fn count(&self, kind: LemmaKind) -> usize {
        self.lemmas.iter().filter(|l| l.kind == kind).count()
    }

    /// Removes a lemma without re-checking references, so that scripts
    /// citing it can be verified against its absence.
    pub fn remove(&mut self, id: &str) -> Option<Lemma> {
        let i = self.index.remove(id)?;
        let lemma = self.lemmas.remove(i);
        for v in self.index.values_mut() {
            if *v > i {
                *v -= 1;
            }
        }
        Some(lemma)
    }

    /// Script ids in dependency order, ties broken by id. Scripts caught in a
    /// cycle come last, in id order.
    pub fn topological_scripts(&self) -> Vec<String> {
        let scripts: BTreeMap<&str, &Lemma> =
            self.lemmas.iter().filter(|l| l.script().is_some()).map(|l| (l.id.as_str(), l)).collect();
        let mut pending: BTreeMap<&str, BTreeSet<&str>> = scripts
            .iter()
            .map(|(&id, l)| (id, l.depends.iter().map(String::as_str).filter(|d| scripts.contains_key(d)).collect()))
            .collect();
        let mut order = Vec::new();
        loop {
            let Some(next) = pending.iter().find(|(_, deps)| deps.is_empty()).map(|(&id, _)| id) else {
                break;
            };
            pending.remove(next);
            for deps in pending.values_mut() {
                deps.remove(next);
            }
            order.push(next.to_string());
        }
        order.extend(pending.keys().map(|id| id.to_string()));
        order
    }

    /// Verifies every script in dependency order. A script's conclusion is
    /// usable by later scripts only if it verified.
    pub fn verify_all(&self) -> Vec<VerifyReport> {
        let mut ctx = Verified { reg: self, accepted: BTreeSet::new() };
        let mut reports = Vec::new();
        for id in self.topological_scripts() {
            let script = self.get(&id).and_then(Lemma::script).expect("topological order lists scripts only");
            let report = verify_script(script, &ctx);
            if report.accepted {
                ctx.accepted.insert(id);
            }
            reports.push(report);
        }
        reports
    }

    /// Verifies one script together with the scripts it needs.
    pub fn verify_one(&self, id: &str) -> Option<VerifyReport> {
        self.get(id)?.script()?;
        let needed = self.closure(id);
        let mut ctx = Verified { reg: self, accepted: BTreeSet::new() };
        for sid in self.topological_scripts() {
            if !needed.contains(&sid) {
                continue;
            }
            let script = self.get(&sid).and_then(Lemma::script)?;
            let report = verify_script(script, &ctx);
            if sid == id {
                return Some(report);
            }
            if report.accepted {
                ctx.accepted.insert(sid);
            }
        }
        None
    }

    fn closure(&self, id: &str) -> BTreeSet<String> {
        let mut seen = BTreeSet::new();
        let mut stack = alloc::vec![id.to_string()];
        while let Some(next) = stack.pop() {
            if !seen.insert(next.clone()) {
                continue;
            }
            if let Some(l) = self.get(&next) {
                stack.extend(l.depends.iter().cloned());
            }
        }
        seen
    }
}

struct Verified<'a> {
    reg: &'a Registry,
    accepted: BTreeSet<String>,
}

impl LemmaContext for Verified<'_> {
    fn resolve(&self, id: &str) -> Resolved<'_> {
        let Some(lemma) = self.reg.get(id) else {
            return Resolved::Unknown;
        };
        match &lemma.source {
            LemmaSource::Axiom(a) => Resolved::Primitive(a.statement.as_ref()),
            LemmaSource::Composite(c) => Resolved::Facts { facts: &lemma.facts, nonzero: &c.nonzero },
            LemmaSource::Script(s) if self.accepted.contains(id) => Resolved::Statement(s.conclusion_equation()),
            LemmaSource::Script(_) => Resolved::NotVerified,
        }
    }
}

#[cfg(test)]
mod tests;

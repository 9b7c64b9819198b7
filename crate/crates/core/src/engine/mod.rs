//! Equations over named atoms, the derivation DSL and the step checker.
//!
//! Atoms are independent indeterminates. Nothing relates `sa` to `ca` unless
//! an established equation says so, which is what makes the dependency audit
//! meaningful.

mod check;
mod parse;
mod script;

pub use check::{
    apply_hypothesis, check_step, entails, equivalent, verify_script, EntryKind, EntryReport, LemmaContext,
    NoLemmas, Rejection, Resolved, Scope, Verdict, VerifyReport,
};
pub use parse::{parse_equation, parse_expr, parse_lemma, parse_script, ParseError, ParseErrorKind};
pub use script::{
    AxiomDecl, CompositeDecl, Equation, FactDecl, GivenDecl, HypDecl, Hypothesis, Item, Justification, LemmaSource,
    NonzeroSet, ProofScript, ScriptKind, Step, StepKind,
};
pub use script::Atom;

use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    #[error("hypothesis target `{0}` occurs in its own replacement")]
    SelfReference(String),
    #[error("unjustified division by `{0}`")]
    UnjustifiedDivision(String),
    #[error(transparent)]
    Arith(#[from] crate::arith::ArithError),
}

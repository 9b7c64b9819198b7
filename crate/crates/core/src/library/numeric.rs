//! Agreement between the symbolic layer and the construction oracle: every
//! equation a lemma states must hold numerically once its atoms are bound to
//! measured quantities.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::Lemma;
use crate::arith::MultiPoly;
use crate::engine::{Atom, Equation, LemmaSource};
use crate::geometry::{construct_figure, measure, FigureId, GeometryError};

/// Smallest magnitude accepted for a polynomial declared nonzero.
const NONZERO_FLOOR: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct CrossCheck {
    pub lemma: String,
    pub figure: FigureId,
    pub samples: usize,
    pub equations: usize,
    pub max_residual: f64,
    /// Label of the equation attaining `max_residual`, with its parameters.
    pub worst: Option<(String, BTreeMap<String, f64>)>,
    /// Smallest magnitude reached by any declared nonzero polynomial.
    pub min_nonzero: f64,
}

impl CrossCheck {
    pub fn passed(&self, tol: f64) -> bool {
        self.max_residual < tol && self.min_nonzero > NONZERO_FLOOR
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CrossCheckError {
    #[error("`{0}` is not bound to a figure")]
    NoFigure(String),
    #[error("`{0}` has no equations to check")]
    NothingToCheck(String),
    #[error("atom `{atom}` of `{lemma}` has no bound quantity")]
    Unbound { lemma: String, atom: String },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

fn parts(lemma: &Lemma) -> Result<(&[Atom], Vec<Equation>, Vec<MultiPoly>), CrossCheckError> {
    match &lemma.source {
        LemmaSource::Script(s) => Ok((&s.atoms, s.equations(), s.declared_nonzero())),
        LemmaSource::Composite(c) => {
            Ok((&c.atoms, c.facts.iter().map(|f| f.equation.clone()).collect(), c.nonzero.clone()))
        }
        LemmaSource::Axiom(_) => Err(CrossCheckError::NothingToCheck(lemma.id.clone())),
    }
}

/// Evaluates every equation and nonzero declaration of `lemma` on its figure
/// at each parameter assignment.
pub fn cross_check(lemma: &Lemma, params: &[BTreeMap<String, f64>]) -> Result<CrossCheck, CrossCheckError> {
    let figure: FigureId = lemma
        .figure
        .as_deref()
        .ok_or_else(|| CrossCheckError::NoFigure(lemma.id.clone()))?
        .parse()?;
    let (atoms, equations, nonzero) = parts(lemma)?;
    let mut bindings = Vec::new();
    for a in atoms {
        let q = a
            .bind
            .as_ref()
            .ok_or_else(|| CrossCheckError::Unbound { lemma: lemma.id.clone(), atom: a.name.clone() })?;
        bindings.push((a.name.clone(), q.clone()));
    }
    let mut out = CrossCheck {
        lemma: lemma.id.clone(),
        figure,
        samples: params.len(),
        equations: equations.len(),
        max_residual: 0.0,
        worst: None,
        min_nonzero: f64::INFINITY,
    };
    for p in params {
        let fig = construct_figure(figure, p)?;
        let mut env = BTreeMap::new();
        for (atom, quantity) in &bindings {
            env.insert(atom.clone(), measure(&fig, quantity)?);
        }
        for eq in &equations {
            let r = eq.residual_f64(&env).unwrap_or(f64::INFINITY);
            let r = if r.is_nan() { f64::INFINITY } else { r };
            if r > out.max_residual || out.worst.is_none() {
                out.max_residual = r.max(out.max_residual);
                out.worst = Some((eq.label.to_string(), p.clone()));
            }
        }
        for poly in &nonzero {
            let v = libm::fabs(poly.eval_f64(&env).unwrap_or(0.0));
            out.min_nonzero = out.min_nonzero.min(v);
        }
    }
    Ok(out)
}

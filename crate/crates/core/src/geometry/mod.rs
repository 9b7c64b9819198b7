//! Floating-point construction oracle for the eight catalogued figures.
//!
//! Every figure is built from its angle parameters with elementary
//! coordinate geometry (ray intersections, perpendicular feet, bisectors),
//! then measured. Trigonometric reference values come from `libm`.

mod figures;
mod point;

pub use figures::{construct_figure, FigureId, ParamDomain};
pub use point::{angle_at, bisector_point, line_intersection, perpendicular_foot, Point};

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeometryError {
    #[error("DomainViolation({0})")]
    DomainViolation(String),
    #[error("degenerate construction: {0}")]
    Degenerate(String),
    #[error("no intersection: {0}")]
    NoIntersection(String),
    #[error("unknown quantity `{0}`")]
    UnknownQuantity(String),
    #[error("unknown figure `{0}`")]
    UnknownFigure(String),
    #[error("missing parameter `{0}`")]
    MissingParameter(String),
}

/// A constructed figure: parameters, labelled points and measured quantities.
#[derive(Debug, Clone, PartialEq)]
pub struct Figure {
    pub id: FigureId,
    pub params: BTreeMap<String, f64>,
    pub points: BTreeMap<String, Point>,
    pub quantities: BTreeMap<String, f64>,
    checks: Vec<Postcondition>,
}

#[derive(Debug, Clone, PartialEq)]
struct Postcondition {
    name: &'static str,
    expected: &'static str,
    lhs: f64,
    rhs: f64,
}

impl Figure {
    pub fn tags(&self) -> &'static [&'static str] {
        self.id.tags()
    }
}

/// Value of a named length, angle or derived quantity.
pub fn measure(fig: &Figure, quantity: &str) -> Result<f64, GeometryError> {
    fig.quantities
        .get(quantity)
        .copied()
        .ok_or_else(|| GeometryError::UnknownQuantity(String::from(quantity)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub expected: String,
    pub measured: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    pub figure: FigureId,
    pub params: BTreeMap<String, f64>,
    pub checks: Vec<CheckResult>,
    pub max_residual: f64,
    pub tol: f64,
}

impl ResidualReport {
    pub fn passed(&self) -> bool {
        self.max_residual < self.tol
    }

    pub fn worst(&self) -> Option<&CheckResult> {
        self.checks.iter().fold(None, |acc: Option<&CheckResult>, c| match acc {
            Some(a) if a.residual >= c.residual => Some(a),
            _ => Some(c),
        })
    }
}

/// Evaluates the figure's postcondition table.
pub fn check_figure(fig: &Figure, tol: f64) -> ResidualReport {
    let mut max = 0.0f64;
    let checks = fig
        .checks
        .iter()
        .map(|c| {
            let residual = libm::fabs(c.lhs - c.rhs);
            let residual = if residual.is_nan() { f64::INFINITY } else { residual };
            max = max.max(residual);
            CheckResult { name: c.name.into(), expected: c.expected.into(), measured: c.lhs, residual }
        })
        .collect();
    ResidualReport { figure: fig.id, params: fig.params.clone(), checks, max_residual: max, tol }
}

#[cfg(test)]
mod tests;

//! Exact arithmetic: rationals, sparse multivariate polynomials and
//! rational functions over named indeterminates.

mod poly;
mod ratfunc;
mod rational;

pub use poly::{poly_is_zero, Monomial, MultiPoly};
pub use ratfunc::{ratfunc_equal, RatFunc};
pub use rational::{rat_make, Rational};

use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("no value bound for atom `{0}`")]
    UnboundAtom(String),
}

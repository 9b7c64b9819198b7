//! Exact verification kernel for trigonometric proofs of the Pythagorean
//! theorem.
//!
//! The crate is `no_std` (it needs `alloc`) and performs no IO. It provides
//!
//! - [`arith`]: exact rationals, multivariate polynomials and rational functions;
//! - [`engine`]: the derivation DSL, hypotheses and the step checker;
//! - [`geometry`]: a floating-point construction oracle for the eight figures;
//! - [`library`]: the lemma registry and the shipped proof catalog;
//! - [`audit`]: the dependency graph and circularity audits.
#![no_std]

extern crate alloc;

pub mod arith;
pub mod audit;
pub mod engine;
pub mod geometry;
pub mod library;

use alloc::string::{String, ToString};
use core::fmt;
use core::str::FromStr;

use super::Registry;
use crate::arith::{MultiPoly, RatFunc};
use crate::engine::{Equation, Item, VerifyReport};

/// Result of eliminating `y = AB` between `tan2 = (y + 1)*t` and
/// `tan2 = (y - 1)/t`.
#[derive(Debug, Clone)]
pub struct DoubleAngleDerivation {
    /// `y = (1 + t^2)/(1 - t^2)`
    pub y: Equation,
    /// `tan2 = 2*t/(1 - t^2)`
    pub tan2: Equation,
}

/// Solves the two tangent expressions for `y` and substitutes back.
///
/// Equating the right sides gives `(y + 1)*t^2 = y - 1`, linear in `y`.
pub fn derive_tan_double_angle() -> DoubleAngleDerivation {
    let t = MultiPoly::var("t");
    let t2 = &t * &t;
    let one = MultiPoly::one();
    // y*(t^2 - 1) + (t^2 + 1) = 0
    let coef = &t2 - &one;
    let rest = &t2 + &one;
    let y = RatFunc::new(-rest, coef).expect("t^2 - 1 is not the zero polynomial");
    let tan2 = y.add(&RatFunc::one()).mul(&RatFunc::var("t"));
    let tan2 = RatFunc::new(tan2.num().clone(), tan2.den().clone()).expect("nonzero denominator");
    DoubleAngleDerivation {
        y: Equation::new("ysol", RatFunc::var("y"), normalize(&y)),
        tan2: Equation::new("conclusion", RatFunc::var("tan2"), normalize(&tan2)),
    }
}

/// Cancels the denominator's content and a leading sign so that the
/// printed form is stable.
fn normalize(f: &RatFunc) -> RatFunc {
    let (cn, n) = f.num().primitive_part();
    let (cd, d) = f.den().primitive_part();
    let scale = &cn / &cd;
    let (n, d) = match d.leading() {
        Some((_, c)) if c.is_negative() => (n.scale(&-scale), -d),
        _ => (n.scale(&scale), d),
    };
    RatFunc::new(n, d).expect("denominator stays nonzero")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Variant {
    First,
    Second,
    Third,
    Exercise,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::First, Variant::Second, Variant::Third, Variant::Exercise];

    pub fn as_str(self) -> &'static str {
        match self {
            Variant::First => "first",
            Variant::Second => "second",
            Variant::Third => "third",
            Variant::Exercise => "exercise",
        }
    }

    pub fn lemma_id(self) -> &'static str {
        match self {
            Variant::First => "proof_first",
            Variant::Second => "proof_second",
            Variant::Third => "proof_third",
            Variant::Exercise => "proof_exercise",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("UnknownVariant({0})")]
pub struct UnknownVariant(pub String);

impl FromStr for Variant {
    type Err = UnknownVariant;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Variant::ALL
            .into_iter()
            .find(|v| v.as_str() == s || v.lemma_id() == s)
            .ok_or_else(|| UnknownVariant(s.to_string()))
    }
}

/// Verifies one of the four theorem scripts with its prerequisites.
pub fn prove_pythagoras(reg: &Registry, variant: &str) -> Result<VerifyReport, UnknownVariant> {
    let v: Variant = variant.parse()?;
    reg.verify_one(v.lemma_id()).ok_or_else(|| UnknownVariant(variant.to_string()))
}

#[derive(Debug, Clone)]
pub struct ExerciseSolution {
    pub bf: Option<Equation>,
    pub df: Option<Equation>,
    pub identity: Option<VerifyReport>,
    pub pythagoras: Option<VerifyReport>,
}

impl ExerciseSolution {
    pub fn accepted(&self) -> bool {
        self.bf.is_some()
            && self.df.is_some()
            && self.identity.as_ref().is_some_and(|r| r.accepted)
            && self.pythagoras.as_ref().is_some_and(|r| r.accepted)
    }
}

/// Lengths BF and DF, the triple-angle identity and the Pythagoras proof of
/// the exercise. Lengths are present only if their script verified.
pub fn solve_exercise(reg: &Registry) -> ExerciseSolution {
    let lengths = reg.verify_one("exercise_bf_df");
    let accepted = lengths.as_ref().is_some_and(|r| r.accepted);
    let step = |label: &str| -> Option<Equation> {
        if !accepted {
            return None;
        }
        reg.get("exercise_bf_df")?.script()?.items.iter().find_map(|item| match item {
            Item::Step(s) if s.label == label => Some(s.equation.clone()),
            _ => None,
        })
    };
    ExerciseSolution {
        bf: step("bfval"),
        df: step("dfval"),
        identity: reg.verify_one("exercise_triple_angle"),
        pythagoras: reg.verify_one("proof_exercise"),
    }
}

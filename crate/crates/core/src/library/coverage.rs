//! Manifest of the displayed equations of the derivations, each mapped to
//! the script entry that states it.

use alloc::format;
use alloc::string::String;

use super::Registry;
use crate::engine::{equivalent, parse_equation, NonzeroSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DisplayedEquation {
    /// Short description of where the equation is displayed.
    pub name: &'static str,
    /// The equation, written in the atoms of the target script.
    pub equation: &'static str,
    pub lemma: &'static str,
    /// Step, given or conclusion label; hypotheses use their target atom.
    pub label: &'static str,
}

impl DisplayedEquation {
    /// Checks that the mapped entry exists and states an equivalent equation
    /// under the script's nonzero declarations.
    pub fn locate(&self, reg: &Registry) -> Result<(), String> {
        let script = reg
            .get(self.lemma)
            .and_then(|l| l.script())
            .ok_or_else(|| format!("{}: no script `{}`", self.name, self.lemma))?;
        let stated = script
            .entry(self.label)
            .ok_or_else(|| format!("{}: `{}` has no entry `{}`", self.name, self.lemma, self.label))?;
        let expected = parse_equation(self.equation).map_err(|e| format!("{}: {e}", self.name))?;
        let nz = NonzeroSet::from_polys(script.declared_nonzero().iter());
        if equivalent(&expected, &stated, &nz) {
            Ok(())
        } else {
            Err(format!("{}: `{}` states {stated}, expected {}", self.name, self.label, self.equation))
        }
    }
}

const fn entry(name: &'static str, equation: &'static str, lemma: &'static str, label: &'static str) -> DisplayedEquation {
    DisplayedEquation { name, equation, lemma, label }
}

pub const COVERAGE: &[DisplayedEquation] = &[
    entry("theorem statement", "c^2 = a^2 + b^2", "proof_first", "pythagoras"),
    entry("isosceles construction: tan of the apex angle", "tan2 = a/b", "proof_first", "tan2"),
    entry("isosceles construction: tan of the half angle", "t = (c - b)/a", "proof_first", "t"),
    entry("first proof: substitution", "a/b = 2*((c - b)/a)/(1 - ((c - b)/a)^2)", "proof_first", "substituted"),
    entry("first proof: cross-multiplication", "a*(a^2 - (c - b)^2) = 2*a*b*(c - b)", "proof_first", "cross"),
    entry("bisector: EC = ab/(b + c)", "ec = a*b/(b + c)", "proof_second", "ec"),
    entry("bisector: tan from triangle EAC", "t = a/(b + c)", "proof_second", "t1"),
    entry("second proof: equating the tangents", "(c - b)/a = a/(b + c)", "proof_second", "equate"),
    entry("second proof: conclusion", "c^2 = a^2 + b^2", "proof_second", "pythagoras"),
    entry("double angle: AC = AD + CD", "tan2 = x + t", "tan_double_angle", "ac"),
    entry("double angle: x = y tan", "x = y*t", "tan_double_angle", "x"),
    entry("double angle: first tangent", "tan2 = (y + 1)*t", "tan_double_angle", "first_tan"),
    entry("double angle: second tangent", "tan2 = (y - 1)/t", "tan_double_angle", "second_tan"),
    entry("double angle: eliminated y", "y = (1 + t^2)/(1 - t^2)", "tan_double_angle", "ysol"),
    entry("tangent double-angle formula", "tan2 = 2*t/(1 - t^2)", "tan_double_angle", "conclusion"),
    entry("sine double angle: ratio in ABC", "s1 = s2/(2*c1)", "sin_double_angle", "sub"),
    entry("sine double-angle formula", "s2 = 2*s1*c1", "sin_double_angle", "conclusion"),
    entry("cosine double angle: ratio in ABC", "c1 = (1 + c2)/(2*c1)", "cos_double_angle", "sub"),
    entry("cosine double-angle formula", "c2 = 2*c1^2 - 1", "cos_double_angle", "conclusion"),
    entry("area proof: AB = 1/cos", "y = 1/c2", "half_tangent_relation", "y"),
    entry("area proof: two expressions of S", "x/2 = y*ed/2", "half_tangent_relation", "area"),
    entry("area proof: tan/cos = tan2 - tan", "t/c2 = tan2 - t", "half_tangent_relation", "area2"),
    entry("half-tangent relation", "t = s2/(1 + c2)", "half_tangent_relation", "conclusion"),
    entry("third proof: sin of the apex angle", "s2 = a/c", "proof_third", "s2"),
    entry("third proof: cos of the apex angle", "c2 = b/c", "proof_third", "c2"),
    entry("third proof: substitution", "(c - b)/a = (a/c)/(1 + b/c)", "proof_third", "sub"),
    entry("third proof: conclusion", "c^2 = a^2 + b^2", "proof_third", "pythagoras"),
    entry("sine addition: law of sines in ABD", "ad/sab = ab/cb", "sin_add", "sines"),
    entry("sine addition formula", "sab = sa*cb + ca*sb", "sin_add", "conclusion"),
    entry("cosine addition chain: law of cosines", "cab = (ab^2 + bd^2 - ad^2)/(2*ab*bd)", "cos_add", "cosines"),
    entry(
        "cosine addition chain: secants and tangents",
        "cab = ca*cb/2*(1/ca^2 + 1/cb^2 - (ta + tb)^2)",
        "cos_add",
        "sub",
    ),
    entry("cosine addition formula", "cab = ca*cb - sa*sb", "cos_add", "conclusion"),
    entry("secant identity: CD = AC tan", "cd = ac*ta", "sec_squared", "cd"),
    entry("secant identity: BD = BC + CD", "bd = 1 + cd", "sec_squared", "bd"),
    entry("secant identity: cos = AB/BD", "ca = (1/ca)/(1 + ta^2)", "sec_squared", "sub"),
    entry("secant identity", "1/ca^2 = 1 + ta^2", "sec_squared", "conclusion"),
    entry("sine subtraction: law of sines in ABD", "ad/smb = bd/ca", "sin_sub", "sines"),
    entry("sine subtraction formula", "smb = sa*cb - ca*sb", "sin_sub", "conclusion"),
    entry("cosine subtraction chain: law of cosines", "cmb = (ab^2 + bd^2 - ad^2)/(2*ab*bd)", "cos_sub", "cosines"),
    entry(
        "cosine subtraction chain: secants and tangents",
        "cmb = ca*cb/2*(1/ca^2 + 1/cb^2 - (ta - tb)^2)",
        "cos_sub",
        "sub",
    ),
    entry("cosine subtraction formula", "cmb = ca*cb + sa*sb", "cos_sub", "conclusion"),
    entry(
        "cyclic quadrilateral: two expressions of S",
        "ab*bc/2 + ad*dc/2 = ab*ad*sab/2 + bc*dc*ssup/2",
        "pythagorean_identity_zimba",
        "area",
    ),
    entry(
        "cyclic quadrilateral",
        "0 = sa*ca*(cb^2 + sb^2 - 1) + sb*cb*(ca^2 + sa^2 - 1)",
        "pythagorean_identity_zimba",
        "quadrilateral",
    ),
    entry("Pythagorean identity", "1 = ca^2 + sa^2", "pythagorean_identity_zimba", "conclusion"),
    entry("exercise: BF", "bf = s2/s3", "exercise_bf_df", "bfval"),
    entry("exercise: DF", "df = s1/s3", "exercise_bf_df", "dfval"),
    entry("exercise: triple-angle identity", "s3 + s1 = 2*c1*s2", "exercise_triple_angle", "conclusion"),
    entry("exercise: Pythagorean theorem", "c^2 = a^2 + b^2", "proof_exercise", "pythagoras"),
];

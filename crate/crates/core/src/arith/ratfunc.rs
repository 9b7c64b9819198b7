use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use core::fmt;

use super::{ArithError, MultiPoly, Rational};

/// Quotient of two polynomials.
///
/// Only the content is normalized (the denominator is a primitive integer
/// polynomial with positive leading coefficient); common polynomial factors
/// are not cancelled. Equality is decided by cross-multiplication.
#[derive(Clone)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero());
        }
        let (factor, den) = den.primitive_part();
        let inv = factor.recip()?;
        Ok(RatFunc { num: num.scale(&inv), den })
    }

    pub fn zero() -> Self {
        RatFunc { num: MultiPoly::zero(), den: MultiPoly::one() }
    }

    pub fn one() -> Self {
        RatFunc::from_poly(MultiPoly::one())
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        RatFunc { num: p, den: MultiPoly::one() }
    }

    pub fn constant(c: Rational) -> Self {
        RatFunc::from_poly(MultiPoly::constant(c))
    }

    pub fn var(name: &str) -> Self {
        RatFunc::from_poly(MultiPoly::var(name))
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn into_parts(self) -> (MultiPoly, MultiPoly) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        if self.den == other.den {
            return RatFunc { num: &self.num + &other.num, den: self.den.clone() }.renormalized();
        }
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        RatFunc { num, den: &self.den * &other.den }.renormalized()
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        RatFunc { num: &self.num * &other.num, den: &self.den * &other.den }.renormalized()
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc, ArithError> {
        if other.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        RatFunc::new(&self.num * &other.den, &self.den * &other.num)
    }

    pub fn recip(&self) -> Result<RatFunc, ArithError> {
        RatFunc::one().div(self)
    }

    pub fn pow(&self, exp: i32) -> Result<RatFunc, ArithError> {
        let base = if exp < 0 { self.recip()? } else { self.clone() };
        let e = exp.unsigned_abs();
        Ok(RatFunc { num: base.num.pow(e), den: base.den.pow(e) }.renormalized())
    }

    fn renormalized(self) -> RatFunc {
        RatFunc::new(self.num, self.den).expect("denominator stays nonzero under ring operations")
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut v = self.num.vars();
        v.extend(self.den.vars());
        v
    }

    pub fn contains_var(&self, var: &str) -> bool {
        self.num.contains_var(var) || self.den.contains_var(var)
    }

    /// Simultaneous substitution `var := value` for every binding.
    ///
    /// Powers of each binding's denominator are cancelled between the
    /// numerator and denominator of the result, so `2t/(1 - t^2)` under
    /// `t := p/q` becomes `2 p q / (q^2 - p^2)` rather than carrying a stray
    /// `q` on both sides.
    pub fn substitute(&self, bindings: &BTreeMap<String, RatFunc>) -> Result<RatFunc, ArithError> {
        let parts: BTreeMap<String, (MultiPoly, MultiPoly)> = bindings
            .iter()
            .filter(|(v, _)| self.contains_var(v))
            .map(|(v, r)| (v.clone(), (r.num.clone(), r.den.clone())))
            .collect();
        if parts.is_empty() {
            return Ok(self.clone());
        }
        let (num, num_deg) = self.num.substitute_homogeneous(&parts);
        let (den, den_deg) = self.den.substitute_homogeneous(&parts);
        let mut num = num;
        let mut den = den;
        for (v, (_, q)) in &parts {
            let dn = num_deg.get(v).copied().unwrap_or(0);
            let dd = den_deg.get(v).copied().unwrap_or(0);
            if dd > dn {
                num = &num * &q.pow(dd - dn);
            } else if dn > dd {
                den = &den * &q.pow(dn - dd);
            }
        }
        RatFunc::new(num, den)
    }

    pub fn eval(&self, env: &BTreeMap<String, Rational>) -> Result<Rational, ArithError> {
        let n = self.num.eval(env)?;
        let d = self.den.eval(env)?;
        n.checked_div(&d)
    }

    pub fn eval_f64(&self, env: &BTreeMap<String, f64>) -> Result<f64, ArithError> {
        let n = self.num.eval_f64(env)?;
        let d = self.den.eval_f64(env)?;
        if d == 0.0 {
            return Err(ArithError::DivisionByZero);
        }
        Ok(n / d)
    }
}

/// Cross-multiplication equality: `f.num * g.den - g.num * f.den == 0`.
pub fn ratfunc_equal(f: &RatFunc, g: &RatFunc) -> bool {
    (&(&f.num * &g.den) - &(&g.num * &f.den)).is_zero()
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        ratfunc_equal(self, other)
    }
}

impl From<MultiPoly> for RatFunc {
    fn from(p: MultiPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

fn needs_parens(p: &MultiPoly) -> bool {
    p.len() > 1 || p.terms().next().is_some_and(|(m, c)| c.is_negative() || (!m.is_one() && !c.is_one()) || !c.is_integer())
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if needs_parens(&self.num) {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if needs_parens(&self.den) {
            write!(f, "/({})", self.den)
        } else {
            write!(f, "/{}", self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn v(name: &str) -> RatFunc {
        RatFunc::var(name)
    }

    fn k(n: i64) -> RatFunc {
        RatFunc::constant(Rational::from(n))
    }

    #[test]
    fn reflexive_quotient() {
        let f = v("a").div(&v("b")).unwrap();
        assert!(ratfunc_equal(&f, &f.clone()));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(RatFunc::new(MultiPoly::one(), MultiPoly::zero()).err(), Some(ArithError::DivisionByZero));
        assert!(v("a").div(&v("b").sub(&v("b"))).is_err());
    }

    #[test]
    fn eliminating_y_gives_the_double_angle_form() {
        // (y + 1) t with y = (1 + t^2)/(1 - t^2) equals 2t/(1 - t^2).
        let t = v("t");
        let one_minus = k(1).sub(&t.pow(2).unwrap());
        let y = k(1).add(&t.pow(2).unwrap()).div(&one_minus).unwrap();
        let f = k(2).mul(&t).div(&one_minus).unwrap();
        let g = y.add(&k(1)).mul(&t);
        assert!(ratfunc_equal(&f, &g));
    }

    #[test]
    fn unhypothesised_sides_of_the_substituted_double_angle_differ() {
        let (a, b, c) = (v("a"), v("b"), v("c"));
        let cb = c.sub(&b);
        let f = k(2).mul(&a).mul(&cb).div(&a.pow(2).unwrap().sub(&cb.pow(2).unwrap())).unwrap();
        let g = a.div(&b).unwrap();
        assert!(!ratfunc_equal(&f, &g));
        // At a=1, b=1, c=3 the two sides are 4/(-3) and 1.
        let mut env = BTreeMap::new();
        env.insert(String::from("a"), Rational::from(1));
        env.insert(String::from("b"), Rational::from(1));
        env.insert(String::from("c"), Rational::from(3));
        assert_eq!(f.eval(&env).unwrap(), Rational::new(-4, 3).unwrap());
        assert_eq!(g.eval(&env).unwrap(), Rational::from(1));
    }

    #[test]
    fn substitution_cancels_binding_denominator_powers() {
        let t = v("t");
        let f = k(2).mul(&t).div(&k(1).sub(&t.pow(2).unwrap())).unwrap();
        let mut b = BTreeMap::new();
        b.insert(String::from("t"), v("c").sub(&v("b")).div(&v("a")).unwrap());
        let g = f.substitute(&b).unwrap();
        assert_eq!(g.num().to_string(), "-2*a*b + 2*a*c");
        assert_eq!(g.den().to_string(), "a^2 - b^2 + 2*b*c - c^2");
    }

    #[test]
    fn renders_quotients() {
        let f = v("a").div(&v("b").add(&v("c"))).unwrap();
        assert_eq!(f.to_string(), "a/(b + c)");
        assert_eq!(k(3).div(&k(4)).unwrap().to_string(), "3/4");
    }
}

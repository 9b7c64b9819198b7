use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{ArithError, Rational};

/// Power product of named indeterminates, sorted by name, zero exponents omitted.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(String, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(name: &str) -> Self {
        Monomial(alloc::vec![(String::from(name), 1)])
    }

    pub fn from_pairs<I, S>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (S, u32)>,
        S: Into<String>,
    {
        let mut map: BTreeMap<String, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v.into()).or_insert(0) += e;
        }
        Monomial(map.into_iter().filter(|(_, e)| *e > 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, var: &str) -> u32 {
        self.0
            .binary_search_by(|(v, _)| v.as_str().cmp(var))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn factors(&self) -> impl Iterator<Item = (&str, u32)> {
        self.0.iter().map(|(v, e)| (v.as_str(), *e))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().all(|(v, e)| other.exponent(v) >= *e)
    }

    /// `other / self`, assuming `self.divides(other)`.
    fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(
            other
                .0
                .iter()
                .filter_map(|(v, e)| {
                    let d = e - self.exponent(v);
                    (d > 0).then(|| (v.clone(), d))
                })
                .collect(),
        )
    }

    /// Splits off the exponent of `var`.
    fn without(&self, var: &str) -> (u32, Monomial) {
        let e = self.exponent(var);
        (e, Monomial(self.0.iter().filter(|(v, _)| v != var).cloned().collect()))
    }
}

/// Graded lexicographic order; alphabetically earlier names rank higher.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Sparse multivariate polynomial with rational coefficients.
///
/// Terms are keyed by [`Monomial`]; zero coefficients are never stored, so
/// two polynomials are equal exactly when their term maps are equal.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        MultiPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = MultiPoly::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn var(name: &str) -> Self {
        let mut p = MultiPoly::zero();
        p.add_term(Monomial::var(name), Rational::one());
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut p = MultiPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value of a constant polynomial (zero included).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Leading term under graded lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: &str) -> u32 {
        self.terms.keys().map(|m| m.exponent(var)).max().unwrap_or(0)
    }

    pub fn contains_var(&self, var: &str) -> bool {
        self.terms.keys().any(|m| m.exponent(var) > 0)
    }

    pub fn vars(&self) -> BTreeSet<String> {
        self.terms
            .keys()
            .flat_map(|m| m.factors().map(|(v, _)| String::from(v)))
            .collect()
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    fn mul_term(&self, m: &Monomial, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Groups terms by the power of `var`: `self = sum_k coeffs[k] * var^k`.
    pub fn coefficients_in(&self, var: &str) -> BTreeMap<u32, MultiPoly> {
        let mut out: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.without(var);
            out.entry(e).or_default().add_term(rest, c.clone());
        }
        out
    }

    /// Remainder of multivariate division by `divisors` (graded lex order).
    ///
    /// A zero remainder certifies membership in the ideal generated by the
    /// divisors; a nonzero one certifies nothing.
    pub fn reduce(&self, divisors: &[MultiPoly]) -> MultiPoly {
        let divisors: Vec<&MultiPoly> = divisors.iter().filter(|d| !d.is_zero()).collect();
        let mut p = self.clone();
        let mut rem = MultiPoly::zero();
        while let Some((m, c)) = p.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let hit = divisors.iter().find_map(|g| {
                let (gm, gc) = g.leading()?;
                gm.divides(&m).then(|| (g, gm.quotient_of(&m), &c / gc))
            });
            match hit {
                Some((g, qm, qc)) => {
                    p = &p - &g.mul_term(&qm, &qc);
                }
                None => {
                    p.terms.remove(&m);
                    rem.add_term(m, c);
                }
            }
        }
        rem
    }

    /// Exact quotient `self / divisor`, if the division leaves no remainder.
    pub fn exact_div(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        let (gm, gc) = divisor.leading()?;
        let mut p = self.clone();
        let mut q = MultiPoly::zero();
        while let Some((m, c)) = p.leading().map(|(m, c)| (m.clone(), c.clone())) {
            if !gm.divides(&m) {
                return None;
            }
            let qm = gm.quotient_of(&m);
            let qc = &c / gc;
            p = &p - &divisor.mul_term(&qm, &qc);
            q.add_term(qm, qc);
        }
        Some(q)
    }

    /// Splits `self = factor * primitive` where `primitive` has coprime
    /// integer coefficients and a positive leading coefficient.
    pub fn primitive_part(&self) -> (Rational, MultiPoly) {
        let Some((_, lead)) = self.leading() else {
            return (Rational::one(), MultiPoly::zero());
        };
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut factor = Rational::new(num_gcd, den_lcm).expect("lcm of denominators is nonzero");
        if lead.is_negative() {
            factor = -factor;
        }
        let inv = factor.recip().expect("content of a nonzero polynomial is nonzero");
        (factor, self.scale(&inv))
    }

    pub fn primitive(&self) -> MultiPoly {
        self.primitive_part().1
    }

    /// Exact evaluation; fails on an atom missing from `env`.
    pub fn eval(&self, env: &BTreeMap<String, Rational>) -> Result<Rational, ArithError> {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.factors() {
                let x = env.get(v).ok_or_else(|| ArithError::UnboundAtom(String::from(v)))?;
                t = &t * &x.pow(e);
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    pub fn eval_f64(&self, env: &BTreeMap<String, f64>) -> Result<f64, ArithError> {
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut t = c.to_f64();
            for (v, e) in m.factors() {
                let x = env.get(v).ok_or_else(|| ArithError::UnboundAtom(String::from(v)))?;
                t *= libm::pow(*x, e as f64);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Substitutes `var_i := num_i / den_i` for each binding and returns the
    /// numerator over the common denominator `prod_i den_i^(deg_i)`, together
    /// with the degree `deg_i` of `self` in each bound variable.
    pub fn substitute_homogeneous(
        &self,
        bindings: &BTreeMap<String, (MultiPoly, MultiPoly)>,
    ) -> (MultiPoly, BTreeMap<String, u32>) {
        let degrees: BTreeMap<String, u32> = bindings
            .keys()
            .map(|v| (v.clone(), self.degree_in(v)))
            .filter(|(_, d)| *d > 0)
            .collect();
        let mut num_pows: BTreeMap<&str, Vec<MultiPoly>> = BTreeMap::new();
        let mut den_pows: BTreeMap<&str, Vec<MultiPoly>> = BTreeMap::new();
        for (v, d) in &degrees {
            let (n, q) = &bindings[v];
            num_pows.insert(v, power_table(n, *d));
            den_pows.insert(v, power_table(q, *d));
        }
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut rest = Vec::new();
            let mut factor = MultiPoly::one();
            for (v, e) in m.factors() {
                match degrees.get(v) {
                    Some(d) => {
                        factor = &factor * &num_pows[v][e as usize];
                        factor = &factor * &den_pows[v][(d - e) as usize];
                    }
                    None => rest.push((String::from(v), e)),
                }
            }
            for (v, d) in &degrees {
                if m.exponent(v) == 0 {
                    factor = &factor * &den_pows[v.as_str()][*d as usize];
                }
            }
            out = &out + &factor.mul_term(&Monomial(rest), c);
        }
        (out, degrees)
    }
}

fn power_table(p: &MultiPoly, max: u32) -> Vec<MultiPoly> {
    let mut table = Vec::with_capacity(max as usize + 1);
    table.push(MultiPoly::one());
    for k in 1..=max as usize {
        let next = &table[k - 1] * p;
        table.push(next);
    }
    table
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &'a MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &'a MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &'a MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        &self + &rhs
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

/// Renders terms from the highest to the lowest monomial, e.g. `a^2 - b^2 - c^2`.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            match (k, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// True iff `p` has no terms.
pub fn poly_is_zero(p: &MultiPoly) -> bool {
    p.is_zero()
}

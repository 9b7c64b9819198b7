//! Exact rational models of every script.
//!
//! Angles are taken with rational half-angle tangents so that their sines
//! and cosines are rational. Trigonometric atoms are bound from that model,
//! length atoms are filled in from the script's hypotheses, and then every
//! stated equation must hold with no tolerance. Each exact value is also
//! compared with the construction oracle's measurement of the bound quantity.

use std::collections::BTreeMap;

use pythaproof_core::arith::{rat_make, Rational};
use pythaproof_core::engine::{Item, ProofScript};
use pythaproof_core::geometry::{construct_figure, measure, FigureId};
use pythaproof_core::library::Registry;

/// Rotation by an angle, as an exact (cos, sin) pair.
#[derive(Clone)]
struct Rot {
    c: Rational,
    s: Rational,
}

impl Rot {
    /// Angle 2*atan(u).
    fn from_half_tangent(u: &Rational) -> Rot {
        let one = Rational::one();
        let u2 = u * u;
        let den = &one + &u2;
        Rot { c: &(&one - &u2) / &den, s: &(u + u) / &den }
    }

    fn then(&self, o: &Rot) -> Rot {
        Rot { c: &(&self.c * &o.c) - &(&self.s * &o.s), s: &(&self.s * &o.c) + &(&self.c * &o.s) }
    }

    fn inverse(&self) -> Rot {
        Rot { c: self.c.clone(), s: -&self.s }
    }

    fn tan(&self) -> Rational {
        &self.s / &self.c
    }
}

fn angle(u: &Rational) -> f64 {
    2.0 * u.to_f64().atan()
}

fn trig_model(theta_u: &Rational, alpha_u: &Rational, beta_u: &Rational) -> (BTreeMap<String, Rational>, BTreeMap<String, f64>) {
    let th = Rot::from_half_tangent(theta_u);
    let th2 = th.then(&th);
    let th3 = th2.then(&th);
    let al = Rot::from_half_tangent(alpha_u);
    let be = Rot::from_half_tangent(beta_u);
    let sum = al.then(&be);
    let diff = al.then(&be.inverse());
    // sin(pi - x) = sin x
    let q = [
        ("sin_theta", th.s.clone()),
        ("cos_theta", th.c.clone()),
        ("tan_theta", th.tan()),
        ("sin_2theta", th2.s.clone()),
        ("cos_2theta", th2.c.clone()),
        ("tan_2theta", th2.tan()),
        ("sin_3theta", th3.s.clone()),
        ("sin_alpha", al.s.clone()),
        ("cos_alpha", al.c.clone()),
        ("tan_alpha", al.tan()),
        ("sin_beta", be.s.clone()),
        ("cos_beta", be.c.clone()),
        ("tan_beta", be.tan()),
        ("sin_alpha_plus_beta", sum.s.clone()),
        ("cos_alpha_plus_beta", sum.c.clone()),
        ("sin_alpha_minus_beta", diff.s.clone()),
        ("cos_alpha_minus_beta", diff.c.clone()),
        ("sin_pi_minus_alpha_minus_beta", sum.s.clone()),
    ];
    let params = [("theta", angle(theta_u)), ("alpha", angle(alpha_u)), ("beta", angle(beta_u))];
    (
        q.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        params.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
    )
}

fn bind_atoms(script: &ProofScript, trig: &BTreeMap<String, Rational>) -> BTreeMap<String, Rational> {
    let mut env: BTreeMap<String, Rational> = script
        .atoms
        .iter()
        .filter_map(|a| trig.get(a.bind.as_deref()?).map(|v| (a.name.clone(), v.clone())))
        .collect();
    loop {
        let before = env.len();
        for item in &script.items {
            if let Item::Hyp(h) = item {
                if !env.contains_key(h.hyp.target()) {
                    if let Ok(v) = h.hyp.replacement().eval(&env) {
                        env.insert(h.hyp.target().to_string(), v);
                    }
                }
            }
        }
        if env.len() == before {
            return env;
        }
    }
}

/// Lengths that no hypothesis determines, from the law of sines in the
/// oracle's triangles (AB = 1 in fig1, BC = 1 in fig2, BD = 1 in fig8).
fn with_lengths(figure: FigureId, trig: &BTreeMap<String, Rational>) -> BTreeMap<String, Rational> {
    let mut out = trig.clone();
    if figure == FigureId::Fig1 {
        out.insert("AB".into(), Rational::one());
        out.insert("BC".into(), trig["sin_2theta"].clone());
        out.insert("CA".into(), trig["cos_2theta"].clone());
    }
    if figure == FigureId::Fig2 {
        out.insert("AB".into(), trig["cos_2theta"].recip().unwrap());
    }
    if figure == FigureId::Fig8 {
        let s3 = &trig["sin_3theta"];
        let df = &trig["sin_theta"] / s3;
        out.insert("BF".into(), &trig["sin_2theta"] / s3);
        out.insert("AF".into(), &Rational::one() + &df);
        out.insert("DF".into(), df);
    }
    out
}

fn check_script(reg: &Registry, id: &str, trig: &BTreeMap<String, Rational>, params: &BTreeMap<String, f64>) {
    let lemma = reg.get(id).unwrap();
    let script = lemma.script().unwrap();
    let figure: FigureId = lemma.figure.as_deref().unwrap().parse().unwrap();
    let env = bind_atoms(script, &with_lengths(figure, trig));
    for a in &script.atoms {
        assert!(env.contains_key(&a.name), "{id}: atom {} has no exact value", a.name);
    }
    for eq in script.equations() {
        let (l, r) = (eq.lhs.eval(&env).unwrap(), eq.rhs.eval(&env).unwrap());
        assert_eq!(l, r, "{id}: `{}` {eq} fails exactly", eq.label);
    }
    for p in script.declared_nonzero() {
        assert!(!p.eval(&env).unwrap().is_zero(), "{id}: {p} vanishes in the model");
    }
    let params: BTreeMap<String, f64> =
        params.iter().filter(|(k, _)| figure.param_names().contains(&k.as_str())).map(|(k, v)| (k.clone(), *v)).collect();
    let fig = construct_figure(figure, &params).unwrap();
    for a in &script.atoms {
        let measured = measure(&fig, a.bind.as_deref().unwrap()).unwrap();
        let exact = env[&a.name].to_f64();
        assert!((measured - exact).abs() < 1e-12, "{id}: {} exact {exact}, measured {measured}", a.name);
    }
}

#[test]
fn every_script_holds_in_exact_models() {
    let reg = Registry::shipped().unwrap();
    let ids: Vec<String> = reg.lemmas().iter().filter(|l| l.script().is_some()).map(|l| l.id.clone()).collect();
    assert_eq!(ids.len(), 16);
    // theta < pi/6 needs u < tan(pi/12) ~ 0.268; beta < alpha < pi/2 needs v < u < 1
    let models = [((1, 4), (1, 2), (1, 3)), ((1, 5), (2, 3), (1, 7)), ((2, 9), (3, 4), (1, 2))];
    for ((tn, td), (an, ad), (bn, bd)) in models {
        let (trig, params) = trig_model(&rat_make(tn, td).unwrap(), &rat_make(an, ad).unwrap(), &rat_make(bn, bd).unwrap());
        for id in &ids {
            check_script(&reg, id, &trig, &params);
        }
    }
}

#[test]
fn corrupted_model_breaks_some_equation() {
    let reg = Registry::shipped().unwrap();
    let (mut trig, _) = trig_model(&rat_make(1, 4).unwrap(), &rat_make(1, 2).unwrap(), &rat_make(1, 3).unwrap());
    trig.insert("sin_2theta".into(), rat_make(1, 2).unwrap());
    let script = reg.get("sin_double_angle").unwrap().script().unwrap();
    let env = bind_atoms(script, &trig);
    assert!(script.equations().iter().any(|eq| eq.lhs.eval(&env).unwrap() != eq.rhs.eval(&env).unwrap()));
}

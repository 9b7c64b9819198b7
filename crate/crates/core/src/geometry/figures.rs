use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_6, PI};
use core::fmt;
use core::str::FromStr;

use libm::{cos, sin, tan};

use super::point::{angle_at, bisector_point, line_intersection, perpendicular_foot, Point};
use super::{Figure, GeometryError, Postcondition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FigureId {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
    Fig8,
}

/// Admissible parameter region of a figure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamDomain {
    /// `0 < theta < upper`.
    Theta { upper: Bound },
    /// `0 < alpha < pi/2`.
    Alpha,
    /// `0 < alpha, beta < pi/2`.
    AlphaBeta,
    /// `0 < beta < alpha < pi/2`.
    BetaBelowAlpha,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    QuarterPi,
    SixthPi,
}

impl Bound {
    fn value(self) -> f64 {
        match self {
            Bound::QuarterPi => FRAC_PI_4,
            Bound::SixthPi => FRAC_PI_6,
        }
    }

    fn text(self) -> &'static str {
        match self {
            Bound::QuarterPi => "pi/4",
            Bound::SixthPi => "pi/6",
        }
    }
}

impl FigureId {
    pub const ALL: [FigureId; 8] = [
        FigureId::Fig1,
        FigureId::Fig2,
        FigureId::Fig3,
        FigureId::Fig4,
        FigureId::Fig5,
        FigureId::Fig6,
        FigureId::Fig7,
        FigureId::Fig8,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FigureId::Fig1 => "fig1",
            FigureId::Fig2 => "fig2",
            FigureId::Fig3 => "fig3",
            FigureId::Fig4 => "fig4",
            FigureId::Fig5 => "fig5",
            FigureId::Fig6 => "fig6",
            FigureId::Fig7 => "fig7",
            FigureId::Fig8 => "fig8",
        }
    }

    pub fn domain(self) -> ParamDomain {
        match self {
            FigureId::Fig1 | FigureId::Fig2 | FigureId::Fig3 => ParamDomain::Theta { upper: Bound::QuarterPi },
            FigureId::Fig8 => ParamDomain::Theta { upper: Bound::SixthPi },
            FigureId::Fig4 | FigureId::Fig7 => ParamDomain::AlphaBeta,
            FigureId::Fig5 => ParamDomain::BetaBelowAlpha,
            FigureId::Fig6 => ParamDomain::Alpha,
        }
    }

    /// Configuration caveats carried into reports.
    pub fn tags(self) -> &'static [&'static str] {
        match self {
            FigureId::Fig8 => &["reconstructed-configuration"],
            _ => &[],
        }
    }

    pub fn param_names(self) -> &'static [&'static str] {
        self.domain().param_names()
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FigureId {
    type Err = GeometryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FigureId::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| GeometryError::UnknownFigure(s.to_string()))
    }
}

fn param(params: &BTreeMap<String, f64>, name: &str) -> Result<f64, GeometryError> {
    let v = params.get(name).copied().ok_or_else(|| GeometryError::MissingParameter(name.to_string()))?;
    if !v.is_finite() {
        return Err(GeometryError::DomainViolation(format!("{name} is finite")));
    }
    Ok(v)
}

fn require(ok: bool, constraint: &str) -> Result<(), GeometryError> {
    if ok {
        Ok(())
    } else {
        Err(GeometryError::DomainViolation(constraint.to_string()))
    }
}

impl ParamDomain {
    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            ParamDomain::Theta { .. } => &["theta"],
            ParamDomain::Alpha => &["alpha"],
            ParamDomain::AlphaBeta | ParamDomain::BetaBelowAlpha => &["alpha", "beta"],
        }
    }

    pub fn describe(self) -> String {
        match self {
            ParamDomain::Theta { upper } => format!("0 < theta < {}", upper.text()),
            ParamDomain::Alpha => "0 < alpha < pi/2".to_string(),
            ParamDomain::AlphaBeta => "0 < alpha < pi/2, 0 < beta < pi/2".to_string(),
            ParamDomain::BetaBelowAlpha => "0 < beta < alpha < pi/2".to_string(),
        }
    }

    pub fn check(self, params: &BTreeMap<String, f64>) -> Result<(), GeometryError> {
        for name in params.keys() {
            if !self.param_names().contains(&name.as_str()) {
                return Err(GeometryError::UnknownQuantity(name.clone()));
            }
        }
        match self {
            ParamDomain::Theta { upper } => {
                let t = param(params, "theta")?;
                require(t > 0.0, "theta > 0")?;
                require(t < upper.value(), &format!("theta < {}", upper.text()))
            }
            ParamDomain::Alpha => {
                let a = param(params, "alpha")?;
                require(a > 0.0, "alpha > 0")?;
                require(a < FRAC_PI_2, "alpha < pi/2")
            }
            ParamDomain::AlphaBeta => {
                let a = param(params, "alpha")?;
                let b = param(params, "beta")?;
                require(a > 0.0, "alpha > 0")?;
                require(a < FRAC_PI_2, "alpha < pi/2")?;
                require(b > 0.0, "beta > 0")?;
                require(b < FRAC_PI_2, "beta < pi/2")
            }
            ParamDomain::BetaBelowAlpha => {
                let a = param(params, "alpha")?;
                let b = param(params, "beta")?;
                require(b > 0.0, "beta > 0")?;
                require(b < a, "beta < alpha")?;
                require(a < FRAC_PI_2, "alpha < pi/2")
            }
        }
    }

    /// Maps a point of the unit cube onto the domain shrunk by `margin`
    /// radians at every endpoint. Coordinates are clamped to `[0, 1]`.
    pub fn from_unit(self, u: &[f64], margin: f64) -> BTreeMap<String, f64> {
        let at = |i: usize| u.get(i).copied().unwrap_or(0.5).clamp(0.0, 1.0);
        let span = |lo: f64, hi: f64, s: f64| lo + s * (hi - lo);
        let mut out = BTreeMap::new();
        match self {
            ParamDomain::Theta { upper } => {
                out.insert("theta".to_string(), span(margin, upper.value() - margin, at(0)));
            }
            ParamDomain::Alpha => {
                out.insert("alpha".to_string(), span(margin, FRAC_PI_2 - margin, at(0)));
            }
            ParamDomain::AlphaBeta => {
                out.insert("alpha".to_string(), span(margin, FRAC_PI_2 - margin, at(0)));
                out.insert("beta".to_string(), span(margin, FRAC_PI_2 - margin, at(1)));
            }
            ParamDomain::BetaBelowAlpha => {
                let a = span(2.0 * margin, FRAC_PI_2 - margin, at(0));
                out.insert("alpha".to_string(), a);
                out.insert("beta".to_string(), span(margin, a - margin, at(1)));
            }
        }
        out
    }

    /// Corners of the unit cube, i.e. the domain-edge sample points.
    pub fn corners(self) -> Vec<Vec<f64>> {
        match self.param_names().len() {
            1 => alloc::vec![alloc::vec![0.0], alloc::vec![1.0]],
            _ => alloc::vec![
                alloc::vec![0.0, 0.0],
                alloc::vec![0.0, 1.0],
                alloc::vec![1.0, 0.0],
                alloc::vec![1.0, 1.0]
            ],
        }
    }
}

struct Builder {
    points: BTreeMap<String, Point>,
    quantities: BTreeMap<String, f64>,
    checks: Vec<Postcondition>,
}

impl Builder {
    fn new() -> Self {
        Builder { points: BTreeMap::new(), quantities: BTreeMap::new(), checks: Vec::new() }
    }

    fn point(&mut self, name: &str, p: Point) -> Result<Point, GeometryError> {
        if !p.is_finite() {
            return Err(GeometryError::Degenerate(format!("point {name} is not finite")));
        }
        self.points.insert(name.to_string(), p);
        Ok(p)
    }

    fn p(&self, name: &str) -> Point {
        self.points[name]
    }

    fn q(&mut self, name: &str, v: f64) -> f64 {
        self.quantities.insert(name.to_string(), v);
        v
    }

    /// Records the length of segment `name` (two single-letter point labels).
    fn len(&mut self, name: &str) -> f64 {
        let mut it = name.chars();
        let a = it.next().expect("segment label");
        let b = it.next().expect("segment label");
        let v = self.p(a.encode_utf8(&mut [0; 4])).dist(self.p(b.encode_utf8(&mut [0; 4])));
        self.q(name, v)
    }

    /// Records the angle `name` = `angle_PVQ` at vertex V.
    fn angle(&mut self, name: &str) -> f64 {
        let labels: Vec<char> = name.trim_start_matches("angle_").chars().collect();
        let get = |c: char| self.p(c.encode_utf8(&mut [0; 4]));
        let v = angle_at(get(labels[0]), get(labels[1]), get(labels[2]));
        self.q(name, v)
    }

    fn check(&mut self, name: &'static str, expected: &'static str, lhs: f64, rhs: f64) {
        self.checks.push(Postcondition { name, expected, lhs, rhs });
    }

    fn finish(self, id: FigureId, params: &BTreeMap<String, f64>) -> Result<Figure, GeometryError> {
        for (name, v) in &self.quantities {
            if !v.is_finite() {
                return Err(GeometryError::Degenerate(format!("{name} is not finite")));
            }
        }
        Ok(Figure {
            id,
            params: params.clone(),
            points: self.points,
            quantities: self.quantities,
            checks: self.checks,
        })
    }
}

const ORIGIN: Point = Point::new(0.0, 0.0);
const X_AXIS: Point = Point::new(1.0, 0.0);
const Y_AXIS: Point = Point::new(0.0, 1.0);

/// Builds a figure at the given parameters.
pub fn construct_figure(id: FigureId, params: &BTreeMap<String, f64>) -> Result<Figure, GeometryError> {
    id.domain().check(params)?;
    let mut b = Builder::new();
    match id {
        FigureId::Fig1 => fig1(&mut b, param(params, "theta")?)?,
        FigureId::Fig2 => fig2(&mut b, param(params, "theta")?)?,
        FigureId::Fig3 => fig3(&mut b, param(params, "theta")?)?,
        FigureId::Fig4 => fig4(&mut b, param(params, "alpha")?, param(params, "beta")?)?,
        FigureId::Fig5 => fig5(&mut b, param(params, "alpha")?, param(params, "beta")?)?,
        FigureId::Fig6 => fig6(&mut b, param(params, "alpha")?)?,
        FigureId::Fig7 => fig7(&mut b, param(params, "alpha")?, param(params, "beta")?)?,
        FigureId::Fig8 => fig8(&mut b, param(params, "theta")?)?,
    }
    b.finish(id, params)
}

fn theta_quantities(b: &mut Builder, th: f64) {
    b.q("theta", th);
    b.q("sin_theta", sin(th));
    b.q("cos_theta", cos(th));
    b.q("tan_theta", tan(th));
    b.q("sin_2theta", sin(2.0 * th));
    b.q("cos_2theta", cos(2.0 * th));
    b.q("tan_2theta", tan(2.0 * th));
}

fn alpha_beta_quantities(b: &mut Builder, al: f64, be: f64) {
    b.q("alpha", al);
    b.q("beta", be);
    b.q("sin_alpha", sin(al));
    b.q("cos_alpha", cos(al));
    b.q("tan_alpha", tan(al));
    b.q("sin_beta", sin(be));
    b.q("cos_beta", cos(be));
    b.q("tan_beta", tan(be));
}

/// Isosceles triangle ABD with AB = AD = 1 and apex angle 2θ; C is the foot
/// of B on AD and E the bisector point on BC.
fn fig1(b: &mut Builder, th: f64) -> Result<(), GeometryError> {
    theta_quantities(b, th);
    let a = b.point("A", ORIGIN)?;
    let d = b.point("D", X_AXIS)?;
    let bp = b.point("B", Point::polar(2.0 * th))?;
    let c = b.point("C", perpendicular_foot(bp, a, d)?)?;
    b.point("E", bisector_point(a, bp, d, bp, c)?)?;
    let ab = b.len("AB");
    let ad = b.len("AD");
    let bc = b.len("BC");
    let ca = b.len("CA");
    let cd = b.len("CD");
    let ec = b.len("EC");
    b.len("EB");
    b.len("BD");
    let bad = b.angle("angle_BAD");
    let dbc = b.angle("angle_DBC");
    let abd = b.angle("angle_ABD");
    let adb = b.angle("angle_ADB");
    let eac = b.angle("angle_EAC");
    b.q("tan_theta_via_CD_over_BC", cd / bc);
    let t = tan(th);
    b.check("AB_eq_AD", "AB = AD", ab, ad);
    b.check("angle_BAD_eq_2theta", "angle_BAD = 2*theta", bad, 2.0 * th);
    b.check("angle_DBC_eq_theta", "angle_DBC = theta", dbc, th);
    b.check("angle_ABD_eq_half_pi_minus_theta", "angle_ABD = pi/2 - theta", abd, FRAC_PI_2 - th);
    b.check("angle_ADB_eq_half_pi_minus_theta", "angle_ADB = pi/2 - theta", adb, FRAC_PI_2 - th);
    b.check("CD_eq_AB_minus_AC", "CD = AB - CA", cd, ab - ca);
    b.check("tan_BAD_eq_BC_over_CA", "tan(angle_BAD) = BC/CA", tan(bad), bc / ca);
    b.check("tan_DBC_eq_tan_theta", "tan(angle_DBC) = tan(theta)", tan(dbc), t);
    b.check("CD_over_BC_eq_tan_theta", "CD/BC = tan(theta)", cd / bc, t);
    b.check("angle_EAC_eq_theta", "angle_EAC = theta", eac, th);
    b.check("EC_over_CA_eq_tan_theta", "EC/CA = tan(theta)", ec / ca, t);
    b.check("bisector_EC", "EC*(CA + AB) = BC*CA", ec * (ca + ab), bc * ca);
    Ok(())
}

/// Right triangle ABC with the right angle at C, BC = 1 and angle CBA = 2θ;
/// D is the bisector point on AC and E the foot of D on AB.
fn fig2(b: &mut Builder, th: f64) -> Result<(), GeometryError> {
    theta_quantities(b, th);
    let bp = b.point("B", ORIGIN)?;
    let c = b.point("C", X_AXIS)?;
    let a = b.point("A", line_intersection(bp, Point::polar(2.0 * th), c, Y_AXIS)?)?;
    let d = b.point("D", bisector_point(bp, a, c, a, c)?)?;
    b.point("E", perpendicular_foot(d, bp, a)?)?;
    let ab = b.len("AB");
    let ac = b.len("AC");
    let ad = b.len("AD");
    let bc = b.len("BC");
    let be = b.len("BE");
    let cd = b.len("CD");
    let ed = b.len("ED");
    let ae = b.len("AE");
    b.len("BD");
    let dbc = b.angle("angle_DBC");
    let dbe = b.angle("angle_DBE");
    let ade = b.angle("angle_ADE");
    let t = tan(th);
    let t2 = tan(2.0 * th);
    b.check("BC_eq_1", "BC = 1", bc, 1.0);
    b.check("BE_eq_BC", "BE = BC", be, bc);
    b.check("angle_DBC_eq_angle_DBE", "angle_DBC = angle_DBE = theta", dbc, dbe);
    b.check("CD_eq_tan_theta", "CD = tan(theta)", cd, t);
    b.check("ED_eq_tan_theta", "ED = tan(theta)", ed, t);
    b.check("AC_eq_tan_2theta", "AC = tan(2*theta)", ac, t2);
    b.check("AC_eq_AD_plus_CD", "AC = AD + CD", ac, ad + cd);
    b.check("AD_eq_AB_tan_theta", "AD = AB*tan(theta)", ad, ab * t);
    b.check("bisector_ratio", "AD/CD = AB/BC", ad / cd, ab / bc);
    b.check("AC_eq_AB_plus_1_tan_theta", "AC = (AB + 1)*tan(theta)", ac, (ab + 1.0) * t);
    b.check("AE_eq_AB_minus_1", "AE = AB - 1", ae, ab - 1.0);
    b.check("AE_eq_tan_2theta_tan_theta", "AE = tan(2*theta)*tan(theta)", ae, t2 * t);
    b.check("angle_ADE_eq_2theta", "angle_ADE = 2*theta", ade, 2.0 * th);
    b.check("AB_eq_sec_2theta", "AB = 1/cos(2*theta)", ab, 1.0 / cos(2.0 * th));
    b.check("area_two_ways", "BC*AD = AB*ED", bc * ad, ab * ed);
    Ok(())
}

/// Isosceles triangle ABD with AD = BD = 1 and base angles θ, completed to
/// the right triangle ABC with C on line AD.
fn fig3(b: &mut Builder, th: f64) -> Result<(), GeometryError> {
    theta_quantities(b, th);
    base_triangle(b, th)?;
    let ab = b.len("AB");
    let ac = b.len("AC");
    let ad = b.len("AD");
    let bc = b.len("BC");
    let bd = b.len("BD");
    let cd = b.len("CD");
    let ae = b.len("AE");
    let abd = b.angle("angle_ABD");
    let bdc = b.angle("angle_BDC");
    let acb = b.angle("angle_ACB");
    b.check("AB_eq_2cos_theta", "AB = 2*cos(theta)", ab, 2.0 * cos(th));
    b.check("BC_eq_sin_2theta", "BC = sin(2*theta)", bc, sin(2.0 * th));
    b.check("CD_eq_cos_2theta", "CD = cos(2*theta)", cd, cos(2.0 * th));
    b.check("AC_eq_1_plus_cos_2theta", "AC = 1 + cos(2*theta)", ac, 1.0 + cos(2.0 * th));
    b.check("BD_eq_AD", "BD = AD", bd, ad);
    b.check("AE_eq_cos_theta", "AE = cos(theta)", ae, cos(th));
    b.check("AB_eq_2AE", "AB = 2*AE", ab, 2.0 * ae);
    b.check("angle_ABD_eq_theta", "angle_ABD = theta", abd, th);
    b.check("angle_BDC_eq_2theta", "angle_BDC = 2*theta", bdc, 2.0 * th);
    b.check("angle_ACB_eq_half_pi", "angle_ACB = pi/2", acb, FRAC_PI_2);
    b.check("sin_theta_eq_BC_over_AB", "sin(theta) = BC/AB", sin(th), bc / ab);
    b.check("cos_theta_eq_AC_over_AB", "cos(theta) = AC/AB", cos(th), ac / ab);
    Ok(())
}

/// Shared by fig3 and fig8: A at the origin, D = (1, 0), B where the ray at θ
/// from A meets the ray at 2θ from D, C the foot of B on AD, E the foot of D
/// on AB.
fn base_triangle(b: &mut Builder, th: f64) -> Result<(Point, Point, Point, Point), GeometryError> {
    let a = b.point("A", ORIGIN)?;
    let d = b.point("D", X_AXIS)?;
    let bp = b.point("B", line_intersection(a, Point::polar(th), d, Point::polar(2.0 * th))?)?;
    let c = b.point("C", perpendicular_foot(bp, a, d)?)?;
    b.point("E", perpendicular_foot(d, a, bp)?)?;
    Ok((a, bp, c, d))
}

/// Triangle ABD split by the altitude BC = 1, with angle ABC = α and
/// angle DBC = β on opposite sides of the altitude.
fn fig4(b: &mut Builder, al: f64, be: f64) -> Result<(), GeometryError> {
    alpha_beta_quantities(b, al, be);
    b.q("sin_alpha_plus_beta", sin(al + be));
    b.q("cos_alpha_plus_beta", cos(al + be));
    let c = b.point("C", ORIGIN)?;
    let bp = b.point("B", Y_AXIS)?;
    b.point("A", line_intersection(bp, Point::new(-sin(al), -cos(al)), c, X_AXIS)?)?;
    b.point("D", line_intersection(bp, Point::new(sin(be), -cos(be)), c, X_AXIS)?)?;
    let (ab, ac, ad, bd, cd) = (b.len("AB"), b.len("AC"), b.len("AD"), b.len("BD"), b.len("CD"));
    b.len("BC");
    let abd = b.angle("angle_ABD");
    let bad = b.angle("angle_BAD");
    let bda = b.angle("angle_BDA");
    let (sab, cab) = (sin(al + be), cos(al + be));
    b.check("AC_eq_tan_alpha", "AC = tan(alpha)", ac, tan(al));
    b.check("CD_eq_tan_beta", "CD = tan(beta)", cd, tan(be));
    b.check("AB_eq_sec_alpha", "AB = 1/cos(alpha)", ab, 1.0 / cos(al));
    b.check("BD_eq_sec_beta", "BD = 1/cos(beta)", bd, 1.0 / cos(be));
    b.check("AD_eq_tan_alpha_plus_tan_beta", "AD = tan(alpha) + tan(beta)", ad, tan(al) + tan(be));
    b.check("angle_ABD_eq_alpha_plus_beta", "angle_ABD = alpha + beta", abd, al + be);
    b.check("law_of_sines_AB", "AD/sin(alpha + beta) = AB/cos(beta)", ad / sab, ab / cos(be));
    b.check("law_of_sines_BD", "AD/sin(alpha + beta) = BD/cos(alpha)", ad / sab, bd / cos(al));
    b.check("law_of_sines_measured", "AD/sin(angle_ABD) = AB/sin(angle_BDA)", ad / sin(abd), ab / sin(bda));
    b.check("angle_BAD_eq_half_pi_minus_alpha", "angle_BAD = pi/2 - alpha", bad, FRAC_PI_2 - al);
    b.check(
        "law_of_cosines",
        "cos(alpha + beta) = (AB^2 + BD^2 - AD^2)/(2*AB*BD)",
        cab,
        (ab * ab + bd * bd - ad * ad) / (2.0 * ab * bd),
    );
    Ok(())
}

/// Right triangle ABC with BC = 1 and angle ABC = α; D on AC with
/// angle DBC = β < α.
fn fig5(b: &mut Builder, al: f64, be: f64) -> Result<(), GeometryError> {
    alpha_beta_quantities(b, al, be);
    b.q("sin_alpha_minus_beta", sin(al - be));
    b.q("cos_alpha_minus_beta", cos(al - be));
    let bp = b.point("B", ORIGIN)?;
    let c = b.point("C", X_AXIS)?;
    b.point("A", line_intersection(bp, Point::polar(al), c, Y_AXIS)?)?;
    b.point("D", line_intersection(bp, Point::polar(be), c, Y_AXIS)?)?;
    let (ab, ac, ad, bd, cd) = (b.len("AB"), b.len("AC"), b.len("AD"), b.len("BD"), b.len("CD"));
    b.len("BC");
    let abd = b.angle("angle_ABD");
    let bad = b.angle("angle_BAD");
    let bda = b.angle("angle_BDA");
    let (smb, cmb) = (sin(al - be), cos(al - be));
    b.check("AC_eq_tan_alpha", "AC = tan(alpha)", ac, tan(al));
    b.check("CD_eq_tan_beta", "CD = tan(beta)", cd, tan(be));
    b.check("AB_eq_sec_alpha", "AB = 1/cos(alpha)", ab, 1.0 / cos(al));
    b.check("BD_eq_sec_beta", "BD = 1/cos(beta)", bd, 1.0 / cos(be));
    b.check("AD_eq_tan_alpha_minus_tan_beta", "AD = tan(alpha) - tan(beta)", ad, tan(al) - tan(be));
    b.check("angle_ABD_eq_alpha_minus_beta", "angle_ABD = alpha - beta", abd, al - be);
    b.check("angle_BDA_eq_half_pi_plus_beta", "angle_BDA = pi/2 + beta", bda, FRAC_PI_2 + be);
    b.check("law_of_sines_BD", "AD/sin(alpha - beta) = BD/cos(alpha)", ad / smb, bd / cos(al));
    b.check("law_of_sines_AB", "AD/sin(alpha - beta) = AB/cos(beta)", ad / smb, ab / cos(be));
    b.check("law_of_sines_measured", "AD/sin(angle_ABD) = BD/sin(angle_BAD)", ad / sin(abd), bd / sin(bad));
    b.check(
        "law_of_cosines",
        "cos(alpha - beta) = (AB^2 + BD^2 - AD^2)/(2*AB*BD)",
        cmb,
        (ab * ab + bd * bd - ad * ad) / (2.0 * ab * bd),
    );
    Ok(())
}

/// Right triangle ABD with the right angle at A; C is the foot of A on BD,
/// BC = 1 and angle ABC = α.
fn fig6(b: &mut Builder, al: f64) -> Result<(), GeometryError> {
    b.q("alpha", al);
    b.q("cos_alpha", cos(al));
    b.q("tan_alpha", tan(al));
    let bp = b.point("B", ORIGIN)?;
    let c = b.point("C", X_AXIS)?;
    let a = b.point("A", line_intersection(bp, Point::polar(al), c, Y_AXIS)?)?;
    b.point("D", line_intersection(a, Point::new(sin(al), -cos(al)), bp, X_AXIS)?)?;
    let (ab, ac, bd, cd) = (b.len("AB"), b.len("AC"), b.len("BD"), b.len("CD"));
    b.len("BC");
    b.len("AD");
    let bad = b.angle("angle_BAD");
    let dac = b.angle("angle_DAC");
    let (ca, ta) = (cos(al), tan(al));
    b.check("angle_BAD_eq_half_pi", "angle_BAD = pi/2", bad, FRAC_PI_2);
    b.check("AC_eq_tan_alpha", "AC = tan(alpha)", ac, ta);
    b.check("AB_eq_sec_alpha", "AB = 1/cos(alpha)", ab, 1.0 / ca);
    b.check("angle_DAC_eq_alpha", "angle_DAC = alpha", dac, al);
    b.check("CD_eq_AC_tan_alpha", "CD = AC*tan(alpha)", cd, ac * ta);
    b.check("CD_eq_tan2_alpha", "CD = tan(alpha)^2", cd, ta * ta);
    b.check("BD_eq_1_plus_tan2_alpha", "BD = 1 + tan(alpha)^2", bd, 1.0 + ta * ta);
    b.check("cos_alpha_eq_AB_over_BD", "cos(alpha) = AB/BD", ca, ab / bd);
    b.check("cos_BD_cos_eq_1", "cos(alpha)*BD*cos(alpha) = 1", ca * bd * ca, 1.0);
    b.check("sec2_alpha_eq_BD", "1/cos(alpha)^2 = BD", 1.0 / (ca * ca), bd);
    Ok(())
}

/// Second intersection of the ray from `a` (on the circle) in direction `u`
/// with the circle centred at `o`.
fn chord_end(a: Point, u: Point, o: Point) -> Point {
    let s = 2.0 * u.dot(o.sub(a)) / u.dot(u);
    a.add(u.scale(s))
}

fn shoelace(pts: &[Point]) -> f64 {
    let n = pts.len();
    let twice: f64 = (0..n).map(|i| pts[i].cross(pts[(i + 1) % n])).sum();
    libm::fabs(twice) / 2.0
}

/// Cyclic quadrilateral ABCD inscribed in the circle of radius 1/2 centred
/// at the origin, with diameter AC, angle BAC = α and angle DAC = β.
fn fig7(b: &mut Builder, al: f64, be: f64) -> Result<(), GeometryError> {
    alpha_beta_quantities(b, al, be);
    b.q("sin_alpha_plus_beta", sin(al + be));
    b.q("sin_pi_minus_alpha_minus_beta", sin(PI - al - be));
    let a = b.point("A", Point::new(-0.5, 0.0))?;
    let c = b.point("C", Point::new(0.5, 0.0))?;
    b.point("O", ORIGIN)?;
    let bp = b.point("B", chord_end(a, Point::polar(al), ORIGIN))?;
    let d = b.point("D", chord_end(a, Point::polar(-be), ORIGIN))?;
    let (ab, bc, ad, dc) = (b.len("AB"), b.len("BC"), b.len("AD"), b.len("DC"));
    b.len("AC");
    let abc = b.angle("angle_ABC");
    let adc = b.angle("angle_ADC");
    let bad = b.angle("angle_BAD");
    let bcd = b.angle("angle_BCD");
    let area = b.q("area_shoelace", shoelace(&[a, bp, c, d]));
    let right = b.q("area_right_triangles", ab * bc / 2.0 + ad * dc / 2.0);
    let angled = b.q("area_with_angles", ab * ad * sin(bad) / 2.0 + bc * dc * sin(bcd) / 2.0);
    b.q("area_two_ways_diff", right - angled);
    let (sa, ca, sb, cb) = (bc, ab, dc, ad);
    let quad = b.q("quadrilateral_rhs", sa * ca * (cb * cb + sb * sb - 1.0) + sb * cb * (ca * ca + sa * sa - 1.0));
    b.check("angle_ABC_eq_half_pi", "angle_ABC = pi/2", abc, FRAC_PI_2);
    b.check("angle_ADC_eq_half_pi", "angle_ADC = pi/2", adc, FRAC_PI_2);
    b.check("AB_eq_cos_alpha", "AB = cos(alpha)", ab, cos(al));
    b.check("BC_eq_sin_alpha", "BC = sin(alpha)", bc, sin(al));
    b.check("AD_eq_cos_beta", "AD = cos(beta)", ad, cos(be));
    b.check("DC_eq_sin_beta", "DC = sin(beta)", dc, sin(be));
    b.check("angle_BAD_eq_alpha_plus_beta", "angle_BAD = alpha + beta", bad, al + be);
    b.check("angle_BCD_eq_pi_minus_BAD", "angle_BCD = pi - angle_BAD", bcd, PI - bad);
    b.check("area_right_triangles", "AB*BC/2 + AD*DC/2 = area", right, area);
    b.check("area_with_angles", "AB*AD*sin(BAD)/2 + BC*DC*sin(BCD)/2 = area", angled, area);
    b.check("area_two_ways_diff", "difference of the two area expressions = 0", right - angled, 0.0);
    b.check("quadrilateral_rhs_vanishes", "sa*ca*(cb^2 + sb^2 - 1) + sb*cb*(ca^2 + sa^2 - 1) = 0", quad, 0.0);
    Ok(())
}

/// The fig3 configuration plus F on segment DC with angle DBF = θ.
fn fig8(b: &mut Builder, th: f64) -> Result<(), GeometryError> {
    theta_quantities(b, th);
    b.q("sin_3theta", sin(3.0 * th));
    let (a, bp, c, d) = base_triangle(b, th)?;
    let to_d = d.sub(bp);
    let to_c = c.sub(bp);
    let phi_d = libm::atan2(to_d.y, to_d.x);
    let turn = if to_d.cross(to_c) >= 0.0 { th } else { -th };
    let f = b.point("F", line_intersection(bp, Point::polar(phi_d + turn), a, X_AXIS)?)?;
    if f.sub(d).dot(c.sub(d)) < 0.0 || f.dist(d) > c.dist(d) + 1e-12 {
        return Err(GeometryError::NoIntersection("F outside segment DC".into()));
    }
    let (ab, ad, af, bc, bd, bf, cd, df, cf) = (
        b.len("AB"),
        b.len("AD"),
        b.len("AF"),
        b.len("BC"),
        b.len("BD"),
        b.len("BF"),
        b.len("CD"),
        b.len("DF"),
        b.len("CF"),
    );
    b.len("AC");
    b.len("AE");
    let abd = b.angle("angle_ABD");
    let bad = b.angle("angle_BAD");
    let dbf = b.angle("angle_DBF");
    let bdf = b.angle("angle_BDF");
    let bfc = b.angle("angle_BFC");
    let bfd = b.angle("angle_BFD");
    let bdc = b.angle("angle_BDC");
    let acb = b.angle("angle_ACB");
    let aed = b.angle("angle_AED");
    let s3 = sin(3.0 * th);
    b.check("AD_eq_1", "AD = 1", ad, 1.0);
    b.check("BD_eq_1", "BD = 1", bd, 1.0);
    b.check("AB_eq_2cos_theta", "AB = 2*cos(theta)", ab, 2.0 * cos(th));
    b.check("BC_eq_sin_2theta", "BC = sin(2*theta)", bc, sin(2.0 * th));
    b.check("CD_eq_cos_2theta", "CD = cos(2*theta)", cd, cos(2.0 * th));
    b.check("angle_ABD_eq_theta", "angle_ABD = theta", abd, th);
    b.check("angle_BAD_eq_theta", "angle_BAD = theta", bad, th);
    b.check("angle_DBF_eq_theta", "angle_DBF = theta", dbf, th);
    b.check("angle_BDF_eq_2theta", "angle_BDF = 2*theta", bdf, 2.0 * th);
    b.check("angle_BFC_eq_3theta", "angle_BFC = 3*theta", bfc, 3.0 * th);
    b.check("angle_ACB_eq_half_pi", "angle_ACB = pi/2", acb, FRAC_PI_2);
    b.check("angle_AED_eq_half_pi", "angle_AED = pi/2", aed, FRAC_PI_2);
    b.check("BF_eq_sin_2theta_over_sin_3theta", "BF = sin(2*theta)/sin(3*theta)", bf, sin(2.0 * th) / s3);
    b.check("DF_eq_sin_theta_over_sin_3theta", "DF = sin(theta)/sin(3*theta)", df, sin(th) / s3);
    b.check("law_of_sines_BDF", "BF/sin(angle_BDF) = BD/sin(angle_BFD)", bf / sin(bdf), bd / sin(bfd));
    b.check("AF_eq_AD_plus_DF", "AF = AD + DF", af, ad + df);
    b.check("CD_eq_CF_plus_FD", "CD = CF + FD", cd, cf + df);
    b.check(
        "triple_angle_identity",
        "sin(angle_BFC) + sin(angle_BAD) - 2*cos(angle_BAD)*sin(angle_BDC) = 0",
        sin(bfc) + sin(bad) - 2.0 * cos(bad) * sin(bdc),
        0.0,
    );
    Ok(())
}

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use core::f64::consts::{FRAC_PI_3, FRAC_PI_4, FRAC_PI_6};

use super::*;

fn params(pairs: &[(&str, f64)]) -> BTreeMap<String, f64> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    libm::fabs(a - b) < tol
}

#[test]
fn foot_of_perpendicular() {
    let o = Point::new(0.0, 0.0);
    let f = perpendicular_foot(Point::new(0.0, 1.0), Point::new(-1.0, 0.0), Point::new(1.0, 0.0)).unwrap();
    assert_eq!(f, o);
    let p = Point::new(0.3, 0.0);
    let same = perpendicular_foot(p, Point::new(-1.0, 0.0), Point::new(1.0, 0.0)).unwrap();
    assert!(same.dist(p) < 1e-15);
    let g = perpendicular_foot(Point::new(3.0, 4.0), o, Point::new(1.0, 1.0)).unwrap();
    assert!(close(g.x, 3.5, 1e-15) && close(g.y, 3.5, 1e-15));
    assert!(perpendicular_foot(p, o, o).is_err());
}

#[test]
fn bisector_of_isosceles_apex_hits_midpoint() {
    let apex = Point::new(0.0, 2.0);
    let p = Point::new(-1.0, 0.0);
    let q = Point::new(1.0, 0.0);
    let m = bisector_point(apex, p, q, p, q).unwrap();
    assert!(close(m.x, 0.0, 1e-15) && close(m.y, 0.0, 1e-15));
    let far = Point::new(5.0, 0.0);
    assert!(bisector_point(apex, p, q, q, far).is_err());
}

#[test]
fn fig1_at_arctan_one_third_is_three_four_five() {
    let fig = construct_figure(FigureId::Fig1, &params(&[("theta", libm::atan(1.0 / 3.0))])).unwrap();
    let q = |n: &str| measure(&fig, n).unwrap();
    let scale = 5.0 / q("AB");
    assert!(close(q("BC") * scale, 3.0, 1e-12));
    assert!(close(q("CA") * scale, 4.0, 1e-12));
    assert!(close(libm::tan(q("angle_BAD")), 0.75, 1e-12));
    assert!(close(q("tan_theta_via_CD_over_BC"), 1.0 / 3.0, 1e-12));
    assert!(close(q("EC") * scale, 4.0 / 3.0, 1e-12));
}

#[test]
fn fig2_at_sixth_pi() {
    let fig = construct_figure(FigureId::Fig2, &params(&[("theta", FRAC_PI_6)])).unwrap();
    let t = libm::tan(FRAC_PI_6);
    assert!(close(measure(&fig, "CD").unwrap(), t, 1e-12));
    assert!(close(measure(&fig, "ED").unwrap(), t, 1e-12));
    assert!(close(measure(&fig, "BE").unwrap(), 1.0, 1e-12));
    assert!(close(measure(&fig, "BC").unwrap(), 1.0, 1e-12));
    let r = check_figure(&construct_figure(FigureId::Fig2, &params(&[("theta", 0.3)])).unwrap(), 1e-10);
    let ratio = r.checks.iter().find(|c| c.name == "bisector_ratio").unwrap();
    assert!(ratio.residual < 1e-12);
}

#[test]
fn domain_guard_names_constraint() {
    let err = construct_figure(FigureId::Fig1, &params(&[("theta", FRAC_PI_3)])).unwrap_err();
    assert_eq!(err, GeometryError::DomainViolation("theta < pi/4".to_string()));
    let err = construct_figure(FigureId::Fig8, &params(&[("theta", FRAC_PI_4)])).unwrap_err();
    assert_eq!(err, GeometryError::DomainViolation("theta < pi/6".to_string()));
    let err = construct_figure(FigureId::Fig5, &params(&[("alpha", 0.3), ("beta", 0.4)])).unwrap_err();
    assert_eq!(err, GeometryError::DomainViolation("beta < alpha".to_string()));
    assert!(matches!(
        construct_figure(FigureId::Fig4, &params(&[("alpha", 0.3)])),
        Err(GeometryError::MissingParameter(_))
    ));
}

#[test]
fn fig7_square_case_areas_agree() {
    let fig = construct_figure(FigureId::Fig7, &params(&[("alpha", FRAC_PI_4), ("beta", FRAC_PI_4)])).unwrap();
    assert!(libm::fabs(measure(&fig, "area_two_ways_diff").unwrap()) < 1e-15);
}

#[test]
fn fig8_lengths_at_point_four() {
    let fig = construct_figure(FigureId::Fig8, &params(&[("theta", 0.4)])).unwrap();
    let bf = measure(&fig, "BF").unwrap();
    let df = measure(&fig, "DF").unwrap();
    assert!(close(bf, libm::sin(0.8) / libm::sin(1.2), 1e-12));
    assert!(close(df, libm::sin(0.4) / libm::sin(1.2), 1e-12));
    assert_eq!(fig.tags(), ["reconstructed-configuration"]);
    assert!(matches!(measure(&fig, "XYZ"), Err(GeometryError::UnknownQuantity(_))));
}

#[test]
fn every_figure_passes_on_a_grid() {
    for id in FigureId::ALL {
        let dom = id.domain();
        for i in 0..=20 {
            for j in 0..=20 {
                let u = [i as f64 / 20.0, j as f64 / 20.0];
                let p = dom.from_unit(&u, 0.01);
                let fig = construct_figure(id, &p).unwrap();
                let r = check_figure(&fig, 1e-10);
                assert!(r.passed(), "{id} at {p:?}: {:?}", r.worst());
                if dom.param_names().len() == 1 {
                    break;
                }
            }
        }
    }
}

#[test]
fn max_residual_is_the_largest_check() {
    let fig = construct_figure(FigureId::Fig4, &params(&[("alpha", 0.7), ("beta", 0.2)])).unwrap();
    let r = check_figure(&fig, 1e-10);
    let m = r.checks.iter().map(|c| c.residual).fold(0.0, f64::max);
    assert_eq!(m, r.max_residual);
}

use super::*;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

#[test]
fn shipped_catalog_verifies() {
    let reg = Registry::shipped().unwrap();
    let mut failures = Vec::new();
    for r in reg.verify_all() {
        if let Some(e) = r.first_rejection() {
            failures.push(format!("{} rejected at {} ({}): {:?}", r.id, e.label, e.equation, e.verdict));
        } else if !r.accepted {
            failures.push(format!("{} not accepted", r.id));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn coverage_entries_resolve() {
    let reg = Registry::shipped().unwrap();
    let failures: Vec<String> = COVERAGE.iter().filter_map(|e| e.locate(&reg).err()).collect();
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn scripts_agree_with_figures() {
    let reg = Registry::shipped().unwrap();
    let mut failures = Vec::new();
    for lemma in reg.lemmas() {
        let Some(fig) = lemma.figure.as_deref() else { continue };
        let domain = fig.parse::<crate::geometry::FigureId>().unwrap().domain();
        let mut params = Vec::new();
        for i in 0..50 {
            let u = (i as f64 + 0.5) / 50.0;
            params.push(domain.from_unit(&[u, 1.0 - u * 0.7], 0.01));
        }
        for c in domain.corners() {
            params.push(domain.from_unit(&c, 0.01));
        }
        let c = cross_check(lemma, &params).unwrap();
        if !c.passed(1e-10) {
            failures.push(format!("{}: {:e} at {:?}, min nonzero {:e}", lemma.id, c.max_residual, c.worst, c.min_nonzero));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

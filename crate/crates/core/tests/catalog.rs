use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use proptest::prelude::*;
use pythaproof_core::arith::{rat_make, ratfunc_equal, RatFunc, Rational};
use pythaproof_core::audit::{
    ancestors, ancestors_bfs, audit, build_graph, shortest_path, AuditError, DepGraph, EXTERNAL_PROVENANCE,
};
use pythaproof_core::engine::{parse_lemma, Item, LemmaSource, VerifyReport};
use pythaproof_core::geometry::{construct_figure, measure, FigureId};
use pythaproof_core::library::{
    derive_tan_double_angle, prove_pythagoras, solve_exercise, LemmaKind, LoadError, Registry, Variant, SHIPPED,
};

const THEOREMS: [&str; 4] = ["proof_first", "proof_second", "proof_third", "proof_exercise"];

fn shipped_graph() -> (Registry, DepGraph) {
    let reg = Registry::shipped().unwrap();
    let reports = reg.verify_all();
    let g = build_graph(&reg, &reports).unwrap();
    (reg, g)
}

fn set(ids: &[&str]) -> BTreeSet<String> {
    ids.iter().map(|s| s.to_string()).collect()
}

#[test]
fn shipped_catalog_counts() {
    let reg = Registry::shipped().unwrap();
    assert_eq!(reg.count(LemmaKind::Axiom), 10);
    assert_eq!(reg.count(LemmaKind::Composite), 8);
    assert_eq!(reg.count(LemmaKind::Derived), 12);
    assert_eq!(reg.count(LemmaKind::Theorem), 4);
    assert!(reg.get("pythagorean_identity").is_some_and(|l| l.kind == LemmaKind::Axiom));
}

#[test]
fn empty_source_list_is_an_empty_registry() {
    let reg = Registry::from_sources([]).unwrap();
    assert!(reg.is_empty());
    assert!(reg.verify_all().is_empty());
    let g = build_graph(&reg, &[]).unwrap();
    assert_eq!(g.node_count(), 0);
}

#[test]
fn undeclared_dependencies_fail_to_load() {
    let sources: Vec<(&str, String)> = SHIPPED
        .iter()
        .map(|(id, text)| {
            let text = if *id == "proof_first" {
                text.replace("depends fig1_facts, tan_double_angle\n", "")
            } else {
                text.to_string()
            };
            (*id, text)
        })
        .collect();
    let err = Registry::from_sources(sources.iter().map(|(id, t)| (*id, t.as_str()))).unwrap_err();
    assert!(matches!(err, LoadError::DependencyMismatch { ref lemma, .. } if lemma == "proof_first"));
    let msg = err.to_string();
    assert!(msg.starts_with("DependencyMismatch(proof_first)"), "{msg}");
    assert!(msg.contains("tan_double_angle") && msg.contains("fig1_facts"), "{msg}");
}

#[test]
fn file_name_must_match_lemma_id() {
    let text = SHIPPED.iter().find(|(id, _)| *id == "law_of_sines").unwrap().1;
    let err = Registry::from_sources([("law_of_cosines", text)]).unwrap_err();
    assert!(matches!(err, LoadError::FileNameMismatch { .. }), "{err}");
}

#[test]
fn verification_runs_in_dependency_order() {
    let reg = Registry::shipped().unwrap();
    let reports = reg.verify_all();
    assert_eq!(reports.len(), 16);
    let mut done = BTreeSet::new();
    for r in &reports {
        assert!(r.accepted, "{} rejected", r.id);
        for dep in &r.invoked {
            let script = reg.get(dep).unwrap().script().is_some();
            assert!(!script || done.contains(dep), "{} checked before {dep}", r.id);
        }
        done.insert(r.id.clone());
    }
}

#[test]
fn zimba_invokes_the_catalogued_set() {
    let reg = Registry::shipped().unwrap();
    let r = reg.verify_one("pythagorean_identity_zimba").unwrap();
    assert!(r.accepted);
    assert_eq!(r.invoked, set(&["ratio_definitions", "sin_add", "sin_supplement", "triangle_area_two_ways"]));
}

#[test]
fn theorem_without_its_lemma_is_rejected() {
    let mut reg = Registry::shipped().unwrap();
    reg.remove("tan_double_angle").unwrap();
    let r = reg.verify_one("proof_first").unwrap();
    assert!(!r.accepted);
    let e = r.first_rejection().unwrap();
    assert_eq!(e.label, "dbl");
}

/// Deleting a given can only turn accepted entries into rejected ones.
#[test]
fn deleting_givens_is_monotone() {
    let sources: Vec<LemmaSource> = SHIPPED.iter().map(|(_, t)| parse_lemma(t).unwrap()).collect();
    let original = Registry::from_parsed(sources.clone()).unwrap().verify_one("proof_first").unwrap();
    let verdicts = |r: &VerifyReport| -> BTreeMap<String, bool> {
        r.entries.iter().map(|e| (e.label.clone(), e.verdict.is_accepted())).collect()
    };
    let before = verdicts(&original);
    let script = sources.iter().find_map(|s| match s {
        LemmaSource::Script(p) if p.id == "proof_first" => Some(p.clone()),
        _ => None,
    });
    let script = script.unwrap();
    let givens: Vec<usize> =
        script.items.iter().enumerate().filter(|(_, i)| matches!(i, Item::Given(_))).map(|(n, _)| n).collect();
    assert!(!givens.is_empty());
    for n in givens {
        let mut mutated = script.clone();
        mutated.items.remove(n);
        mutated.depends = mutated.invoked().into_iter().collect();
        let mut all = sources.clone();
        for s in &mut all {
            if matches!(s, LemmaSource::Script(p) if p.id == "proof_first") {
                *s = LemmaSource::Script(mutated.clone());
            }
        }
        let report = Registry::from_parsed(all).unwrap().verify_one("proof_first").unwrap();
        assert!(!report.accepted);
        for (label, ok) in verdicts(&report) {
            assert!(!ok || before[&label], "{label} accepted only after deletion");
        }
    }
}

#[test]
fn double_angle_elimination() {
    let d = derive_tan_double_angle();
    let at = |t: Rational| BTreeMap::from([("t".to_string(), t)]);
    assert_eq!(d.y.rhs.eval(&at(rat_make(1, 3).unwrap())).unwrap(), rat_make(5, 4).unwrap());
    assert_eq!(d.tan2.rhs.eval(&at(rat_make(1, 3).unwrap())).unwrap(), rat_make(3, 4).unwrap());
    assert_eq!(d.y.rhs.eval(&at(Rational::zero())).unwrap(), Rational::one());
    assert_eq!(d.tan2.rhs.eval(&at(Rational::zero())).unwrap(), Rational::zero());
    // (1 - t^2)*tan2 - 2t vanishes identically
    let t = RatFunc::var("t");
    let one_minus = RatFunc::one().sub(&t.mul(&t));
    let expr = one_minus.mul(&d.tan2.rhs).sub(&t.add(&t));
    assert!(expr.is_zero());
    // both tangent expressions agree at the eliminated y
    let y = &d.y.rhs;
    assert!(ratfunc_equal(&y.add(&RatFunc::one()).mul(&t), &y.sub(&RatFunc::one()).div(&t).unwrap()));
}

#[test]
fn every_variant_proves_pythagoras() {
    let reg = Registry::shipped().unwrap();
    for v in Variant::ALL {
        let r = prove_pythagoras(&reg, v.as_str()).unwrap();
        assert!(r.accepted, "{v}");
        assert_eq!(r.conclusion, "c^2 = a^2 + b^2");
    }
    let first = prove_pythagoras(&reg, "first").unwrap();
    assert_eq!(first.invoked, set(&["fig1_facts", "tan_double_angle"]));
    let third = prove_pythagoras(&reg, "third").unwrap();
    assert_eq!(third.invoked, set(&["fig1_facts", "half_tangent_relation"]));
    let err = prove_pythagoras(&reg, "fourth").unwrap_err();
    assert_eq!(err.to_string(), "UnknownVariant(fourth)");
}

#[test]
fn exercise_lengths_match_the_law_of_sines_oracle() {
    let reg = Registry::shipped().unwrap();
    let sol = solve_exercise(&reg);
    assert!(sol.accepted());
    let th = 0.4f64;
    let env = BTreeMap::from([
        ("s1".to_string(), th.sin()),
        ("s2".to_string(), (2.0 * th).sin()),
        ("s3".to_string(), (3.0 * th).sin()),
    ]);
    let bf = sol.bf.unwrap().rhs.eval_f64(&env).unwrap();
    let df = sol.df.unwrap().rhs.eval_f64(&env).unwrap();
    // triangle BDF: angle theta at B, 2*theta at D, pi - 3*theta at F, BD = 1
    assert!((bf - 0.8f64.sin() / 1.2f64.sin()).abs() < 1e-15);
    assert!((df - 0.4f64.sin() / 1.2f64.sin()).abs() < 1e-15);
    let fig = construct_figure(FigureId::Fig8, &BTreeMap::from([("theta".to_string(), th)])).unwrap();
    assert!((measure(&fig, "BF").unwrap() - bf).abs() < 1e-12);
    assert!((measure(&fig, "DF").unwrap() - df).abs() < 1e-12);
    assert!(sol.identity.unwrap().accepted);
}

#[test]
fn shipped_graph_shape() {
    let (reg, g) = shipped_graph();
    assert_eq!(g.node_count(), reg.len());
    assert_eq!(g.node_count(), 34);
    for (from, to) in g.edges() {
        let lemma = reg.get(from).unwrap();
        assert!(lemma.depends.iter().any(|d| d == to), "{from} -> {to} not declared");
    }
    for lemma in reg.lemmas().iter().filter(|l| l.kind == LemmaKind::Axiom) {
        assert!(ancestors(&g, &lemma.id).unwrap().is_empty(), "{}", lemma.id);
    }
}

#[test]
fn dfs_and_bfs_closures_agree_with_audits() {
    let (_, g) = shipped_graph();
    let nodes: Vec<&str> = g.nodes().collect();
    for t in &nodes {
        let dfs = ancestors(&g, t).unwrap();
        assert_eq!(dfs, ancestors_bfs(&g, t).unwrap(), "{t}");
        assert!(!dfs.contains(*t));
        for f in &nodes {
            let v = audit(&g, t, f).unwrap();
            assert_eq!(v.reachable, dfs.contains(*f), "{t} -> {f}");
            assert_eq!(v.reachable, v.witness_path.is_some());
            if let Some(path) = v.witness_path {
                for w in path.windows(2) {
                    assert!(g.dependencies(&w[0]).unwrap().contains(&w[1]), "{path:?}");
                }
            }
        }
    }
}

#[test]
fn theorems_avoid_the_pythagorean_identity() {
    let (_, g) = shipped_graph();
    for t in THEOREMS {
        let v = audit(&g, t, "pythagorean_identity").unwrap();
        assert!(!v.reachable, "{t}");
        let v = audit(&g, t, "ratio_definitions").unwrap();
        assert!(v.reachable, "{t}");
    }
    let first = ancestors(&g, "proof_first").unwrap();
    assert!(first.is_superset(&set(&["fig1_facts", "ratio_definitions", "tan_double_angle"])));
    let third = ancestors(&g, "proof_third").unwrap();
    assert!(third.is_superset(&set(&["half_tangent_relation", "triangle_area_two_ways"])));
    let zimba = ancestors(&g, "pythagorean_identity_zimba").unwrap();
    assert!(THEOREMS.iter().all(|t| !zimba.contains(*t)));
    assert!(!zimba.contains("pythagorean_identity"));
}

#[test]
fn external_provenance_is_flagged() {
    let (_, g) = shipped_graph();
    let v = audit(&g, "pythagorean_identity_zimba", "pythagorean_identity").unwrap();
    assert_eq!(v.external_provenance_flags, ["law_of_sines"]);
    for t in THEOREMS {
        let v = audit(&g, t, "pythagorean_identity").unwrap();
        for f in &v.external_provenance_flags {
            assert!(g.tags(f).iter().any(|t| t == EXTERNAL_PROVENANCE));
        }
    }
    let v = audit(&g, "proof_exercise", "pythagorean_identity").unwrap();
    assert!(v.external_provenance_flags.is_empty(), "{:?}", v.external_provenance_flags);
}

#[test]
fn audits_are_deterministic() {
    let (_, a) = shipped_graph();
    let (_, b) = shipped_graph();
    assert_eq!(a, b);
    for t in THEOREMS {
        assert_eq!(audit(&a, t, "ratio_definitions").unwrap(), audit(&b, t, "ratio_definitions").unwrap());
    }
    assert_eq!(
        shortest_path(&a, "proof_first", "ratio_definitions").unwrap().unwrap(),
        ["proof_first", "fig1_facts", "ratio_definitions"]
    );
}

#[test]
fn mutually_citing_scripts_form_a_cycle() {
    let a = "script loop_a\nkind derived\ndepends loop_b\natom x\nstep s: x = x by lemma(loop_b)\nconclude s\n";
    let b = "script loop_b\nkind derived\ndepends loop_a\natom x\nstep s: x = x by lemma(loop_a)\nconclude s\n";
    let reg = Registry::from_sources([("loop_a", a), ("loop_b", b)]).unwrap();
    let reports = reg.verify_all();
    assert!(reports.iter().all(|r| !r.accepted));
    let err = build_graph(&reg, &reports).unwrap_err();
    assert_eq!(err, AuditError::CycleDetected(vec!["loop_a".into(), "loop_b".into()]));
}

fn cached_graph() -> &'static DepGraph {
    static GRAPH: OnceLock<DepGraph> = OnceLock::new();
    GRAPH.get_or_init(|| shipped_graph().1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Adding any edge that keeps the graph acyclic never shrinks an
    /// ancestor set.
    #[test]
    fn ancestors_are_monotone(pairs in prop::collection::vec((0usize..34, 0usize..34), 1..6)) {
        let g = cached_graph();
        let nodes: Vec<String> = g.nodes().map(String::from).collect();
        let before: Vec<BTreeSet<String>> = nodes.iter().map(|n| ancestors(g, n).unwrap()).collect();
        let mut h = g.clone();
        for (i, j) in pairs {
            let _ = h.add_edge(&nodes[i], &nodes[j]);
        }
        for (n, old) in nodes.iter().zip(&before) {
            prop_assert!(ancestors(&h, n).unwrap().is_superset(old));
        }
    }
}

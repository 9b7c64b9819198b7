//! Acceptance suite: one line per criterion, exit status nonzero if any fails.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::{catalog_copy, json, pythaproof};
use pythaproof_core::arith::{rat_make, Rational};
use pythaproof_core::engine::{parse_lemma, Equation, Item, LemmaSource};
use pythaproof_core::geometry::{construct_figure, measure, FigureId};
use pythaproof_core::library::{cross_check, derive_tan_double_angle, Registry, COVERAGE, SHIPPED};

const THEOREMS: [&str; 4] = ["proof_first", "proof_second", "proof_third", "proof_exercise"];
const SYMBOLIC_SCRIPTS: usize = 16;
const VERIFY_BUDGET: Duration = Duration::from_secs(10);
const SAMPLE_BUDGET: Duration = Duration::from_secs(5);
const SWEEP_TOL: f64 = 1e-10;
const WORKED_TOL: f64 = 1e-12;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn catalog_verifies() -> Outcome {
    let start = Instant::now();
    let run = pythaproof(&["verify", "--proof", "all", "--format", "json"], None);
    let took = start.elapsed();
    ensure(run.code == 0, || format!("exit {}: {}", run.code, run.stderr))?;
    let v = json(&run);
    ensure(v["accepted"] == SYMBOLIC_SCRIPTS && v["rejected"] == 0, || format!("accepted {}", v["accepted"]))?;
    for r in v["reports"].as_array().unwrap() {
        if r["kind"] == "theorem" {
            ensure(r["conclusion"] == "c^2 = a^2 + b^2", || format!("{} concludes {}", r["id"], r["conclusion"]))?;
        }
    }
    let zimba = v["reports"].as_array().unwrap().iter().find(|r| r["id"] == "pythagorean_identity_zimba").unwrap();
    ensure(zimba["conclusion"] == "1 = ca^2 + sa^2", || format!("zimba concludes {}", zimba["conclusion"]))?;
    ensure(took < VERIFY_BUDGET, || format!("took {took:?}"))?;
    Ok(format!("{SYMBOLIC_SCRIPTS} scripts accepted in {took:.2?} (limit {VERIFY_BUDGET:?})"))
}

fn audit_json(target: &str, forbidden: &str) -> (i32, serde_json::Value) {
    let run = pythaproof(&["audit", "--target", target, "--forbidden", forbidden, "--format", "json"], None);
    let v = json(&run);
    (run.code, v["verdicts"][0].clone())
}

fn circularity_audit() -> Outcome {
    for t in THEOREMS {
        let (code, v) = audit_json(t, "pythagorean_identity");
        ensure(code == 0 && v["reachable"] == false, || format!("{t} reaches pythagorean_identity"))?;
        let (code, v) = audit_json(t, "ratio_definitions");
        ensure(code == 1 && v["reachable"] == true, || format!("{t} does not reach ratio_definitions"))?;
        let path: Vec<&str> = v["witness_path"].as_array().unwrap().iter().map(|p| p.as_str().unwrap()).collect();
        ensure(path.first() == Some(&t) && path.last() == Some(&"ratio_definitions"), || format!("{t}: path {path:?}"))?;
    }
    Ok("pythagorean_identity unreachable and ratio_definitions reachable with witness for all 4 theorems".into())
}

fn oracle_sweep() -> Outcome {
    let start = Instant::now();
    let run = pythaproof(&["sample", "--samples", "1000", "--seed", "42", "--tol", "1e-10", "--format", "json"], None);
    let took = start.elapsed();
    ensure(run.code == 0, || format!("exit {}: {}", run.code, run.stdout))?;
    let v = json(&run);
    let figures = v["figures"].as_array().unwrap();
    ensure(figures.len() == 8, || format!("{} figures", figures.len()))?;
    let worst = figures.iter().map(|f| f["max_residual"].as_f64().unwrap()).fold(0.0, f64::max);
    ensure(worst < SWEEP_TOL, || format!("max residual {worst:e}"))?;
    ensure(took < SAMPLE_BUDGET, || format!("took {took:?}"))?;
    Ok(format!("8 figures x 1000 samples, max residual {worst:.2e} < {SWEEP_TOL:e}, {took:.2?} (limit {SAMPLE_BUDGET:?})"))
}

fn rat(n: i64, d: i64) -> Rational {
    rat_make(n, d).unwrap()
}

fn holds_exactly(eq: &Equation, env: &BTreeMap<String, Rational>) -> Result<(), String> {
    let l = eq.lhs.eval(env).map_err(|e| format!("{}: {e}", eq.label))?;
    let r = eq.rhs.eval(env).map_err(|e| format!("{}: {e}", eq.label))?;
    ensure(l == r, || format!("`{}`: {eq} fails exactly ({l} vs {r})", eq.label))
}

fn worked_instance() -> Outcome {
    let third = rat(1, 3);
    let d = derive_tan_double_angle();
    let at_t = BTreeMap::from([("t".to_string(), third.clone())]);
    let y = d.y.rhs.eval(&at_t).map_err(|e| e.to_string())?;
    let tan2 = d.tan2.rhs.eval(&at_t).map_err(|e| e.to_string())?;
    ensure(y == rat(5, 4) && tan2 == rat(3, 4), || format!("y = {y}, tan2 = {tan2}"))?;

    // 3:4:5 sides follow from tan2 = a/b = 3/4 and t = (c - b)/a = 1/3
    let (a, b) = (rat(3, 1), rat(4, 1));
    let c = &b + &(&a * &third);
    ensure(c == rat(5, 1), || format!("c = {c}"))?;
    let ec = &(&a * &b) / &(&b + &c);
    ensure(ec == rat(4, 3), || format!("EC = {ec}"))?;
    let s2 = &a / &c;
    let c2 = &b / &c;
    let half = &s2 / &(&Rational::one() + &c2);
    ensure(half == third, || format!("sin2/(1 + cos2) = {half}"))?;

    let models: [(&str, Vec<(&str, Rational)>); 5] = [
        ("tan_double_angle", vec![("t", third.clone()), ("tan2", tan2.clone()), ("y", y.clone()), ("x", rat(5, 12))]),
        ("proof_first", vec![("a", a.clone()), ("b", b.clone()), ("c", c.clone()), ("t", third.clone()), ("tan2", tan2.clone())]),
        ("proof_second", vec![("a", a.clone()), ("b", b.clone()), ("c", c.clone()), ("t", third.clone()), ("ec", ec.clone())]),
        ("proof_third", vec![("a", a.clone()), ("b", b.clone()), ("c", c.clone()), ("t", third.clone()), ("s2", s2.clone()), ("c2", c2.clone())]),
        (
            "half_tangent_relation",
            vec![
                ("t", third.clone()),
                ("tan2", tan2.clone()),
                ("y", y.clone()),
                ("x", rat(5, 12)),
                ("ed", third.clone()),
                ("s2", s2.clone()),
                ("c2", c2.clone()),
            ],
        ),
    ];
    let reg = Registry::shipped().map_err(|e| e.to_string())?;
    for (id, vals) in models {
        let env: BTreeMap<String, Rational> = vals.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
        for eq in reg.get(id).unwrap().script().unwrap().equations() {
            holds_exactly(&eq, &env).map_err(|e| format!("{id} {e}"))?;
        }
    }

    let theta = BTreeMap::from([("theta".to_string(), (1.0f64 / 3.0).atan())]);
    let fig1 = construct_figure(FigureId::Fig1, &theta).map_err(|e| e.to_string())?;
    let fig2 = construct_figure(FigureId::Fig2, &theta).map_err(|e| e.to_string())?;
    let m1 = |q: &str| measure(&fig1, q).unwrap();
    let scale = 5.0 / m1("AB");
    let numeric = [
        ("t", m1("tan_theta_via_CD_over_BC"), 1.0 / 3.0),
        ("tan2", m1("tan_2theta"), 0.75),
        ("y", measure(&fig2, "AB").unwrap(), 1.25),
        ("a", m1("BC") * scale, 3.0),
        ("b", m1("CA") * scale, 4.0),
        ("EC", m1("EC") * scale, 4.0 / 3.0),
        ("sin2/(1 + cos2)", m1("sin_2theta") / (1.0 + m1("cos_2theta")), 1.0 / 3.0),
    ];
    let mut worst = 0.0f64;
    for (name, got, want) in numeric {
        let r = (got - want).abs();
        ensure(r < WORKED_TOL, || format!("{name} = {got} (expected {want})"))?;
        worst = worst.max(r);
    }
    Ok(format!("t=1/3 y=5/4 tan2=3/4 3:4:5 EC=4/3 half-tangent 1/3 exact; numeric max error {worst:.1e} < {WORKED_TOL:e}"))
}

fn shipped_sources() -> Vec<LemmaSource> {
    SHIPPED.iter().map(|(_, text)| parse_lemma(text).unwrap()).collect()
}

/// Loads `sources` with the script `id` replaced and reports whether `id`
/// still verifies. Declared dependencies follow the mutated script so that
/// the load itself succeeds.
fn still_verifies(sources: &[LemmaSource], id: &str, mutate: impl Fn(&mut pythaproof_core::engine::ProofScript)) -> bool {
    let mut sources = sources.to_vec();
    for s in &mut sources {
        if let LemmaSource::Script(script) = s {
            if script.id == id {
                mutate(script);
                script.depends = script.invoked().into_iter().collect();
            }
        }
    }
    let reg = Registry::from_parsed(sources).expect("mutated catalog loads");
    reg.verify_one(id).is_some_and(|r| r.accepted)
}

fn conclusion_line_corrupted(text: &str) -> String {
    let label = text.lines().find_map(|l| l.strip_prefix("conclude ")).unwrap().trim().to_string();
    let prefix = format!("step {label}:");
    text.lines()
        .map(|l| if l.starts_with(&prefix) { l.replacen(" by ", " + 1 by ", 1) } else { l.to_string() })
        .collect::<Vec<_>>()
        .join("\n")
}

fn mutation_resistance() -> Outcome {
    let sources = shipped_sources();
    let scripts: Vec<(String, usize)> = sources
        .iter()
        .filter_map(|s| match s {
            LemmaSource::Script(p) => {
                Some((p.id.clone(), p.items.iter().filter(|i| matches!(i, Item::Given(_))).count()))
            }
            _ => None,
        })
        .collect();
    ensure(scripts.len() == SYMBOLIC_SCRIPTS, || format!("{} scripts", scripts.len()))?;

    let mut conclusions = 0;
    let mut givens = 0;
    for (id, given_count) in &scripts {
        let corrupt = |s: &mut pythaproof_core::engine::ProofScript| {
            let label = s.conclusion.clone();
            for item in &mut s.items {
                if let Item::Step(step) = item {
                    if step.label == label {
                        step.equation.rhs = step.equation.rhs.add(&pythaproof_core::arith::RatFunc::one());
                    }
                }
            }
        };
        ensure(!still_verifies(&sources, id, corrupt), || format!("{id}: corrupted conclusion accepted"))?;
        conclusions += 1;
        for k in 0..*given_count {
            let delete = |s: &mut pythaproof_core::engine::ProofScript| {
                let mut seen = 0;
                s.items.retain(|i| {
                    let keep = !matches!(i, Item::Given(_)) || seen != k;
                    if matches!(i, Item::Given(_)) {
                        seen += 1;
                    }
                    keep
                });
            };
            ensure(!still_verifies(&sources, id, delete), || format!("{id}: accepted without given #{k}"))?;
            givens += 1;
        }
    }

    let mut cli_runs = 0;
    for (id, _) in &scripts {
        let dir = catalog_copy();
        let path = dir.path().join(format!("{id}.trig"));
        let text = std::fs::read_to_string(&path).unwrap();
        let corrupted = conclusion_line_corrupted(&text);
        ensure(corrupted != text, || format!("{id}: no conclusion line found"))?;
        std::fs::write(&path, corrupted).unwrap();
        let run = pythaproof(&["verify", "--proof", id], Some(dir.path()));
        ensure(run.code != 0, || format!("{id}: corrupted file exits 0"))?;
        cli_runs += 1;

        std::fs::write(&path, &text).unwrap();
        for (n, line) in text.lines().enumerate().filter(|(_, l)| l.starts_with("given ")) {
            let without: Vec<&str> = text.lines().enumerate().filter(|(i, _)| *i != n).map(|(_, l)| l).collect();
            std::fs::write(&path, without.join("\n")).unwrap();
            let run = pythaproof(&["verify", "--proof", id], Some(dir.path()));
            ensure(run.code != 0, || format!("{id}: exits 0 without `{line}`"))?;
            cli_runs += 1;
        }
    }
    Ok(format!("{conclusions} corrupted conclusions and {givens} deleted givens rejected; {cli_runs} CLI mutants exit nonzero"))
}

fn isosceles_case() -> Outcome {
    let reg = Registry::shipped().map_err(|e| e.to_string())?;
    let report = reg.verify_one("proof_first").unwrap();
    ensure(report.accepted, || "proof_first rejected".into())?;
    let theta = std::f64::consts::PI / 8.0;
    let fig = construct_figure(FigureId::Fig1, &BTreeMap::from([("theta".to_string(), theta)])).map_err(|e| e.to_string())?;
    let (a, b) = (measure(&fig, "BC").unwrap(), measure(&fig, "CA").unwrap());
    ensure((a - b).abs() < WORKED_TOL, || format!("BC = {a}, CA = {b}"))?;
    let params = [BTreeMap::from([("theta".to_string(), theta)])];
    let cc = cross_check(reg.get("proof_first").unwrap(), &params).map_err(|e| e.to_string())?;
    ensure(cc.passed(SWEEP_TOL), || format!("cross-check residual {:e}", cc.max_residual))?;
    Ok(format!("accepted; a = b = {a:.12}, {} equations hold to {:.1e}", cc.equations, cc.max_residual))
}

fn coverage_manifest() -> Outcome {
    let reg = Registry::shipped().map_err(|e| e.to_string())?;
    let errors: Vec<String> = COVERAGE.iter().filter_map(|d| d.locate(&reg).err()).collect();
    ensure(errors.is_empty(), || errors.join("; "))?;
    let pairs: BTreeSet<(&str, &str)> = COVERAGE.iter().map(|d| (d.lemma, d.label)).collect();
    ensure(pairs.len() == COVERAGE.len(), || "two displayed equations map to the same entry".into())?;
    let names: BTreeSet<&str> = COVERAGE.iter().map(|d| d.name).collect();
    ensure(names.len() == COVERAGE.len(), || "duplicate displayed-equation names".into())?;
    for lemma in reg.lemmas() {
        if let Some(s) = lemma.script() {
            ensure(pairs.contains(&(s.id.as_str(), s.conclusion.as_str())), || format!("{} conclusion unmapped", s.id))?;
        }
    }
    Ok(format!("{} displayed equations mapped 1:1; every script conclusion covered", COVERAGE.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("catalog verification", catalog_verifies),
        ("circularity audit", circularity_audit),
        ("numeric oracle sweep", oracle_sweep),
        ("worked instance", worked_instance),
        ("mutation resistance", mutation_resistance),
        ("isosceles edge case", isosceles_case),
        ("coverage manifest", coverage_manifest),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("[PASS] {}. {name}: {detail}", n + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {}. {name}: {detail}", n + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}

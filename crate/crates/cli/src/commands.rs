use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{json, Value};

use pythaproof_core::audit::{audit, build_graph, AuditVerdict};
use pythaproof_core::engine::{Verdict, VerifyReport};
use pythaproof_core::geometry::{construct_figure, FigureId};
use pythaproof_core::library::{
    cross_check, derive_tan_double_angle, solve_exercise, LemmaKind, Registry, Variant, COVERAGE,
};

use crate::catalog;
use crate::config::{Cli, Command, ConfigError, Format, SweepArgs};
use crate::json;
use crate::sweep::{sample_params, sweep, FigureSweep};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

pub const DEFAULT_FORBIDDEN: &str = "pythagorean_identity";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn done(passed: bool, stdout: String) -> Outcome {
        Outcome { code: if passed { EXIT_OK } else { EXIT_FAILED }, stdout, stderr: String::new() }
    }

    fn usage(msg: impl std::fmt::Display) -> Outcome {
        Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Sample { sweep, figure } => cmd_sample(cli.format, sweep, figure.as_deref()),
        Command::Figure { id, params } => cmd_figure(cli.format, id, params),
        other => {
            let dir = catalog::resolve_dir(cli.proofs_dir.as_deref());
            let reg = match catalog::load(dir.as_deref()) {
                Ok(r) => r,
                Err(e) => return Outcome::usage(e),
            };
            match other {
                Command::Verify { proof } => cmd_verify(cli.format, &reg, proof),
                Command::Audit { target, forbidden } => cmd_audit(cli.format, &reg, target, forbidden),
                Command::Report { sweep } => cmd_report(cli.format, &reg, sweep),
                Command::List => cmd_list(cli.format, &reg),
                Command::Sample { .. } | Command::Figure { .. } => unreachable!("handled above"),
            }
        }
    }
}

fn select_reports(reg: &Registry, proof: &str) -> Result<Vec<VerifyReport>, String> {
    if proof == "all" {
        return Ok(reg.verify_all());
    }
    let lemma = reg.get(proof).ok_or_else(|| format!("UnknownLemma({proof})"))?;
    if lemma.script().is_none() {
        return Err(format!("`{proof}` is {} {} and has no script", article(lemma.kind), lemma.kind));
    }
    Ok(reg.verify_one(proof).into_iter().collect())
}

fn article(kind: LemmaKind) -> &'static str {
    match kind {
        LemmaKind::Axiom => "an",
        _ => "a",
    }
}

fn verify_text(out: &mut String, r: &VerifyReport) {
    let verdict = if r.accepted { "accepted" } else { "rejected" };
    let _ = writeln!(out, "{}: {verdict} ({})", r.id, r.kind.as_str());
    let _ = writeln!(out, "  conclusion: {}", r.conclusion);
    let invoked: Vec<&str> = r.invoked.iter().map(String::as_str).collect();
    let _ = writeln!(out, "  invoked: {}", invoked.join(", "));
    for e in &r.entries {
        match &e.verdict {
            Verdict::Accepted => {}
            Verdict::Rejected { reason, residual } => {
                let _ = writeln!(out, "  line {} {} {}: rejected: {reason}", e.line, e.kind.as_str(), e.label);
                let _ = writeln!(out, "    equation: {}", e.equation);
                if let Some(res) = residual {
                    let _ = writeln!(out, "    residual: {res}");
                }
            }
            Verdict::Skipped => {
                let _ = writeln!(out, "  line {} {} {}: skipped", e.line, e.kind.as_str(), e.label);
            }
        }
    }
}

fn verify_json(reports: &[VerifyReport]) -> Value {
    let accepted = reports.iter().filter(|r| r.accepted).count();
    json!({
        "reports": reports.iter().map(json::verify_report).collect::<Vec<_>>(),
        "accepted": accepted,
        "rejected": reports.len() - accepted,
    })
}

pub fn cmd_verify(format: Format, reg: &Registry, proof: &str) -> Outcome {
    let reports = match select_reports(reg, proof) {
        Ok(r) => r,
        Err(e) => return Outcome::usage(e),
    };
    let passed = reports.iter().all(|r| r.accepted);
    let stdout = match format {
        Format::Json => json::render(&verify_json(&reports)),
        Format::Text => {
            let mut out = String::new();
            for r in &reports {
                verify_text(&mut out, r);
            }
            let accepted = reports.iter().filter(|r| r.accepted).count();
            let _ = writeln!(out, "{accepted} accepted, {} rejected", reports.len() - accepted);
            out
        }
    };
    Outcome::done(passed, stdout)
}

enum AuditFailure {
    Usage(String),
    Failed(String),
}

fn run_audits(reg: &Registry, targets: &[String], forbidden: &str) -> Result<Vec<AuditVerdict>, AuditFailure> {
    let targets: Vec<String> = if targets.is_empty() {
        Variant::ALL.iter().map(|v| v.lemma_id().to_string()).collect()
    } else {
        targets.to_vec()
    };
    for id in targets.iter().map(String::as_str).chain([forbidden]) {
        if reg.get(id).is_none() {
            return Err(AuditFailure::Usage(format!("UnknownLemma({id})")));
        }
    }
    let reports = reg.verify_all();
    let graph = build_graph(reg, &reports).map_err(|e| AuditFailure::Failed(e.to_string()))?;
    targets
        .iter()
        .map(|t| audit(&graph, t, forbidden).map_err(|e| AuditFailure::Usage(e.to_string())))
        .collect()
}

fn audit_text(out: &mut String, v: &AuditVerdict) {
    if v.reachable {
        let path = v.witness_path.as_deref().unwrap_or_default().join(" -> ");
        let _ = writeln!(out, "{} -> {}: reachable via {path}", v.target, v.forbidden);
    } else {
        let _ = writeln!(out, "{} -> {}: not reachable", v.target, v.forbidden);
    }
    let _ = writeln!(out, "  ancestors ({}): {}", v.ancestors.len(), v.ancestors.join(", "));
    if !v.external_provenance_flags.is_empty() {
        let _ = writeln!(out, "  external provenance: {}", v.external_provenance_flags.join(", "));
    }
}

pub fn cmd_audit(format: Format, reg: &Registry, targets: &[String], forbidden: &str) -> Outcome {
    let verdicts = match run_audits(reg, targets, forbidden) {
        Ok(v) => v,
        Err(AuditFailure::Usage(e)) => return Outcome::usage(e),
        Err(AuditFailure::Failed(e)) => {
            return Outcome { code: EXIT_FAILED, stdout: String::new(), stderr: format!("error: {e}\n") }
        }
    };
    let passed = verdicts.iter().all(|v| !v.reachable);
    let stdout = match format {
        Format::Json => json::render(&json!({ "verdicts": verdicts.iter().map(json::audit_verdict).collect::<Vec<_>>() })),
        Format::Text => {
            let mut out = String::new();
            for v in &verdicts {
                audit_text(&mut out, v);
            }
            out
        }
    };
    Outcome::done(passed, stdout)
}

fn figures(filter: Option<&str>) -> Result<Vec<FigureId>, String> {
    match filter {
        None => Ok(FigureId::ALL.to_vec()),
        Some(f) => f.parse::<FigureId>().map(|id| vec![id]).map_err(|e| e.to_string()),
    }
}

fn breach_json(b: &crate::sweep::Breach) -> Value {
    json!({ "check": b.check, "params": json::params(&b.params), "residual": json::float(b.residual) })
}

fn sweep_json(s: &FigureSweep) -> Value {
    json!({
        "figure": s.figure.as_str(),
        "tags": s.figure.tags(),
        "points": s.points,
        "checks": s.checks,
        "max_residual": json::float(s.max_residual),
        "worst": s.worst.as_ref().map(breach_json),
        "breach_count": s.breach_count,
        "breaches": s.breaches.iter().map(breach_json).collect::<Vec<_>>(),
        "passed": s.passed(),
    })
}

fn format_params(p: &BTreeMap<String, f64>) -> String {
    p.iter().map(|(k, v)| format!("{k}={v:.17}")).collect::<Vec<_>>().join(",")
}

fn sweep_text(out: &mut String, s: &FigureSweep) {
    let status = if s.passed() { "ok" } else { "FAILED" };
    let _ = writeln!(
        out,
        "{}: {} points, {} checks, max residual {:.3e} (tol {:.1e}) {status}",
        s.figure, s.points, s.checks, s.max_residual, s.tol
    );
    for b in &s.breaches {
        let _ = writeln!(out, "  breach {} at {}: {} residual {:.3e}", s.figure, format_params(&b.params), b.check, b.residual);
    }
    if s.breach_count > s.breaches.len() {
        let _ = writeln!(out, "  ... {} more", s.breach_count - s.breaches.len());
    }
}

fn run_sweeps(args: &SweepArgs, filter: Option<&str>) -> Result<Vec<FigureSweep>, String> {
    args.validate().map_err(|e| e.to_string())?;
    figures(filter)?
        .into_iter()
        .map(|f| sweep(f, args.samples, args.seed, args.tol).map_err(|e| format!("{f}: {e}")))
        .collect()
}

fn sample_json(args: &SweepArgs, sweeps: &[FigureSweep]) -> Value {
    json!({
        "seed": args.seed,
        "samples": args.samples,
        "tol": json::float(args.tol),
        "figures": sweeps.iter().map(sweep_json).collect::<Vec<_>>(),
        "passed": sweeps.iter().all(FigureSweep::passed),
    })
}

pub fn cmd_sample(format: Format, args: &SweepArgs, filter: Option<&str>) -> Outcome {
    let sweeps = match run_sweeps(args, filter) {
        Ok(s) => s,
        Err(e) => return Outcome::usage(e),
    };
    let passed = sweeps.iter().all(FigureSweep::passed);
    let stdout = match format {
        Format::Json => json::render(&sample_json(args, &sweeps)),
        Format::Text => {
            let mut out = String::new();
            for s in &sweeps {
                sweep_text(&mut out, s);
            }
            out
        }
    };
    Outcome::done(passed, stdout)
}

fn parse_params(raw: &[String]) -> Result<BTreeMap<String, f64>, ConfigError> {
    raw.iter()
        .map(|kv| {
            let (k, v) = kv.split_once('=').ok_or_else(|| ConfigError::BadParam(kv.clone()))?;
            let v: f64 = v.trim().parse().map_err(|_| ConfigError::BadParam(kv.clone()))?;
            Ok((k.trim().to_string(), v))
        })
        .collect()
}

pub fn cmd_figure(format: Format, id: &str, raw: &[String]) -> Outcome {
    let fig_id: FigureId = match id.parse() {
        Ok(f) => f,
        Err(e) => return Outcome::usage(e),
    };
    let params = match parse_params(raw) {
        Ok(p) if p.is_empty() => fig_id.domain().from_unit(&[0.5, 0.5], 0.0),
        Ok(p) => p,
        Err(e) => return Outcome::usage(e),
    };
    let fig = match construct_figure(fig_id, &params) {
        Ok(f) => f,
        Err(e) => return Outcome::usage(e),
    };
    let stdout = match format {
        Format::Json => json::render(&json::figure(&fig)),
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "{} at {}", fig.id, format_params(&fig.params));
            for t in fig.tags() {
                let _ = writeln!(out, "  tag {t}");
            }
            for (label, p) in &fig.points {
                let _ = writeln!(out, "  {label} = ({:.17}, {:.17})", p.x, p.y);
            }
            for (name, v) in &fig.quantities {
                let _ = writeln!(out, "  {name} = {v:.17}");
            }
            out
        }
    };
    Outcome::done(true, stdout)
}

pub fn cmd_list(format: Format, reg: &Registry) -> Outcome {
    let stdout = match format {
        Format::Json => {
            let lemmas: Vec<Value> = reg
                .lemmas()
                .iter()
                .map(|l| json!({ "id": l.id, "kind": l.kind.as_str(), "depends": l.depends, "tags": l.tags, "figure": l.figure }))
                .collect();
            json::render(&json!({ "lemmas": lemmas }))
        }
        Format::Text => {
            let mut out = String::new();
            for l in reg.lemmas() {
                let _ = write!(out, "{:<28} {:<9}", l.id, l.kind.as_str());
                if !l.depends.is_empty() {
                    let _ = write!(out, " <- {}", l.depends.join(", "));
                }
                if !l.tags.is_empty() {
                    let _ = write!(out, " [{}]", l.tags.join(", "));
                }
                out.push('\n');
            }
            let counts: Vec<String> = [LemmaKind::Axiom, LemmaKind::Composite, LemmaKind::Derived, LemmaKind::Theorem]
                .iter()
                .map(|k| format!("{} {}", reg.count(*k), k))
                .collect();
            let _ = writeln!(out, "{}", counts.join(", "));
            out
        }
    };
    Outcome::done(true, stdout)
}

pub fn cmd_report(format: Format, reg: &Registry, args: &SweepArgs) -> Outcome {
    if let Err(e) = args.validate() {
        return Outcome::usage(e);
    }
    let reports = reg.verify_all();
    let verified = reports.iter().all(|r| r.accepted);
    let audits = run_audits(reg, &[], DEFAULT_FORBIDDEN);
    let sweeps = match run_sweeps(args, None) {
        Ok(s) => s,
        Err(e) => return Outcome::usage(e),
    };
    let mut cross = Vec::new();
    for lemma in reg.lemmas() {
        let Some(fig) = lemma.figure.as_deref().and_then(|f| f.parse::<FigureId>().ok()) else { continue };
        let params = sample_params(fig, args.samples, args.seed);
        match cross_check(lemma, &params) {
            Ok(c) => cross.push(json!({
                "lemma": c.lemma,
                "figure": c.figure.as_str(),
                "points": c.samples,
                "equations": c.equations,
                "max_residual": json::float(c.max_residual),
                "min_nonzero": json::float(c.min_nonzero),
                "passed": c.passed(args.tol),
            })),
            Err(e) => cross.push(json!({ "lemma": lemma.id, "error": e.to_string(), "passed": false })),
        }
    }
    let unmapped: Vec<String> = COVERAGE.iter().filter_map(|e| e.locate(reg).err()).collect();
    let exercise = solve_exercise(reg);
    let derivation = derive_tan_double_angle();

    let audits_passed = matches!(&audits, Ok(v) if v.iter().all(|v| !v.reachable));
    let sweeps_passed = sweeps.iter().all(FigureSweep::passed);
    let cross_passed = cross.iter().all(|c| c["passed"] == Value::Bool(true));
    let passed = verified && audits_passed && sweeps_passed && cross_passed && unmapped.is_empty() && exercise.accepted();

    let audit_value = match &audits {
        Ok(v) => json!(v.iter().map(json::audit_verdict).collect::<Vec<_>>()),
        Err(AuditFailure::Usage(e) | AuditFailure::Failed(e)) => json!({ "error": e }),
    };
    let value = json!({
        "verify": verify_json(&reports),
        "audits": audit_value,
        "sample": sample_json(args, &sweeps),
        "cross_checks": cross,
        "coverage": { "entries": COVERAGE.len(), "unmapped": unmapped },
        "exercise": {
            "bf": exercise.bf.as_ref().map(|e| e.to_string()),
            "df": exercise.df.as_ref().map(|e| e.to_string()),
            "identity_accepted": exercise.identity.as_ref().is_some_and(|r| r.accepted),
            "pythagoras_accepted": exercise.pythagoras.as_ref().is_some_and(|r| r.accepted),
        },
        "tan_double_angle": { "y": derivation.y.to_string(), "tan2": derivation.tan2.to_string() },
        "passed": passed,
    });
    let stdout = match format {
        Format::Json => json::render(&value),
        Format::Text => {
            let mut out = String::new();
            let accepted = reports.iter().filter(|r| r.accepted).count();
            let _ = writeln!(out, "verify: {accepted}/{} scripts accepted", reports.len());
            match &audits {
                Ok(vs) => vs.iter().for_each(|v| audit_text(&mut out, v)),
                Err(AuditFailure::Usage(e) | AuditFailure::Failed(e)) => {
                    let _ = writeln!(out, "audit: {e}");
                }
            }
            for s in &sweeps {
                sweep_text(&mut out, s);
            }
            let ok = cross.iter().filter(|c| c["passed"] == Value::Bool(true)).count();
            let _ = writeln!(out, "cross-layer: {ok}/{} lemmas agree with their figures", cross.len());
            let _ = writeln!(out, "coverage: {}/{} displayed equations mapped", COVERAGE.len() - unmapped.len(), COVERAGE.len());
            for u in &unmapped {
                let _ = writeln!(out, "  {u}");
            }
            if let (Some(bf), Some(df)) = (&exercise.bf, &exercise.df) {
                let _ = writeln!(out, "exercise: {bf}; {df}");
            }
            let _ = writeln!(out, "tangent double angle: {}; {}", derivation.y, derivation.tan2);
            let _ = writeln!(out, "{}", if passed { "all checks passed" } else { "FAILED" });
            out
        }
    };
    Outcome::done(passed, stdout)
}

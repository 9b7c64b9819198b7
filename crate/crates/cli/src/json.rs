//! JSON rendering. Keys come out sorted because `serde_json::Map` is a
//! `BTreeMap`; floats are written with 17 significant digits.

use std::collections::BTreeMap;

use serde_json::{json, Map, Number, Value};

use pythaproof_core::audit::AuditVerdict;
use pythaproof_core::engine::{Verdict, VerifyReport};
use pythaproof_core::geometry::Figure;

pub fn float(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let text = format!("{x:.16e}");
    Value::Number(text.parse::<Number>().expect("scientific notation is a JSON number"))
}

pub fn params(p: &BTreeMap<String, f64>) -> Value {
    Value::Object(p.iter().map(|(k, v)| (k.clone(), float(*v))).collect::<Map<_, _>>())
}

pub fn verify_report(r: &VerifyReport) -> Value {
    let entries: Vec<Value> = r
        .entries
        .iter()
        .map(|e| {
            let (reason, residual) = match &e.verdict {
                Verdict::Rejected { reason, residual } => (Value::String(reason.to_string()), residual.clone().map(Value::String)),
                _ => (Value::Null, None),
            };
            json!({
                "label": e.label,
                "kind": e.kind.as_str(),
                "line": e.line,
                "equation": e.equation,
                "verdict": e.verdict.as_str(),
                "reason": reason,
                "residual": residual,
            })
        })
        .collect();
    json!({
        "id": r.id,
        "kind": r.kind.as_str(),
        "tags": r.tags,
        "accepted": r.accepted,
        "conclusion": r.conclusion,
        "invoked": r.invoked,
        "entries": entries,
    })
}

pub fn audit_verdict(v: &AuditVerdict) -> Value {
    json!({
        "target": v.target,
        "forbidden": v.forbidden,
        "reachable": v.reachable,
        "witness_path": v.witness_path,
        "ancestors": v.ancestors,
        "external_provenance_flags": v.external_provenance_flags,
    })
}

pub fn figure(f: &Figure) -> Value {
    let points: Map<String, Value> =
        f.points.iter().map(|(k, p)| (k.clone(), Value::Array(vec![float(p.x), float(p.y)]))).collect();
    json!({
        "id": f.id.as_str(),
        "params": params(&f.params),
        "points": points,
        "quantities": params(&f.quantities),
        "tags": f.tags(),
    })
}

/// Pretty-printed with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

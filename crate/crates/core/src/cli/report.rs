//! JSON report envelope shared by all subcommands.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::format_rational;
use crate::conic::{CircleRefutation, DistanceProfile, ParabolaGeometry};
use crate::parse::format_poly;
use crate::proofs::ProofReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    Refuted,
    ProofFailed,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Refuted | Status::ProofFailed => 1,
            Status::Error => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub result: Value,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report values are always serializable")
    }
}

pub fn proof_json(r: &ProofReport) -> Value {
    json!({
        "method": r.method.name(),
        "success": r.success,
        "witness": format_poly(&r.witness),
        "counterexample": r.counterexample.as_ref().map(format_rational),
        "excluded": r.excluded,
        "steps": r.steps,
    })
}

pub fn proof_text(r: &ProofReport) -> String {
    let mut out = format!(
        "method: {}\nsuccess: {}\nwitness: {}\n",
        r.method.name(),
        r.success,
        format_poly(&r.witness)
    );
    if let Some(t) = &r.counterexample {
        out.push_str(&format!("counterexample: {}\n", format_rational(t)));
    }
    if !r.excluded.is_empty() {
        out.push_str(&format!("excluded: {}\n", r.excluded.join("; ")));
    }
    for s in &r.steps {
        out.push_str(&format!("  {s}\n"));
    }
    out
}

pub fn profile_json(p: &DistanceProfile) -> Value {
    json!({
        "entries": p.entries.iter().map(|(t, d)| json!({
            "param": format_rational(t),
            "distance_sq": format_rational(d),
        })).collect::<Vec<_>>(),
        "min_sq": format_rational(&p.min_sq),
        "max_sq": format_rational(&p.max_sq),
        "ratio_sq": format_rational(&p.ratio_sq),
    })
}

pub fn refutation_json(r: &CircleRefutation) -> Value {
    json!({
        "profile": profile_json(&r.profile),
        "circle_compatible": r.circle_compatible,
        "witness": r.witness.as_ref().map(|(a, b)| vec![format_rational(a), format_rational(b)]),
        "insufficient_evidence": r.insufficient_evidence,
    })
}

pub fn refutation_text(r: &CircleRefutation) -> String {
    let mut out = String::new();
    for (t, d) in &r.profile.entries {
        out.push_str(&format!("{}\t{}\n", format_rational(t), format_rational(d)));
    }
    out.push_str(&format!(
        "min^2 = {}\nmax^2 = {}\nratio^2 = {}\n",
        format_rational(&r.profile.min_sq),
        format_rational(&r.profile.max_sq),
        format_rational(&r.profile.ratio_sq)
    ));
    match &r.witness {
        Some((a, b)) => out.push_str(&format!(
            "refuted: members at {} and {} lie at different distances\n",
            format_rational(a),
            format_rational(b)
        )),
        None => out.push_str("circle-compatible: all sampled members are equidistant\n"),
    }
    if r.insufficient_evidence {
        out.push_str("warning: fewer than two distinct parameter values\n");
    }
    out
}

/// Floating-point payload, explicitly marked as such.
pub fn geometry_json(g: &ParabolaGeometry) -> Value {
    let mut v = serde_json::to_value(g).expect("geometry is plain numbers");
    v["numeric"] = Value::Bool(true);
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_round_trips() {
        let r = Report {
            command: "parse".into(),
            inputs: json!({"expr": "x+1"}),
            result: json!({"canonical": "x+1"}),
            status: Status::ProofFailed,
            error: None,
        };
        let text = r.to_json();
        assert!(text.contains("\"proof-failed\""));
        let back: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }
}

//! Versioned, deterministic reports for every command of the CLI.

mod text;

#[cfg(test)]
mod tests;

pub use text::render_text;

use crate::cyclo::{FieldDescription, FieldElement};
use crate::error::{Error, Result};
use crate::expr::{parse_element, FieldSpec};
use crate::families::{Outcome, Verification};
use crate::galois::{conjugate_invariants, same_algebra, verify_period_invariance, AlgebraInvariantData};
use crate::invariants::{fuchsian_check, period_set, RamificationData, Verdict, DEFAULT_WITNESS_BOUND};
use crate::places::{place_with_rep, splitting_type, FinitePlace, PlaceSummary};
use crate::quat::QuaternionAlgebra;
use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA_ID: &str = "afg-report/1";

/// The JSON Schema every report validates against.
pub const SCHEMA: &str = include_str!("../../schema/report.schema.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Undetermined,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub kind: &'static str,
    pub command: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldDescription>,
    pub notes: Vec<String>,
    pub results: Value,
}

impl Report {
    fn new(kind: &'static str, command: &str, field: Option<FieldDescription>) -> Self {
        Report {
            schema: SCHEMA_ID,
            kind,
            command: command.to_string(),
            status: Status::Pass,
            field,
            notes: Vec::new(),
            results: json!({}),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }
}

const ABELIAN_NOTE: &str = "every representable field is abelian over Q, so k^σ = k and conjugation only permutes places";

fn element_string(x: &FieldElement) -> String {
    x.value().serialize()
}

/// Parses a, b and builds (a, b / k).
pub fn algebra_from_exprs(spec: &FieldSpec, a: &str, b: &str) -> Result<QuaternionAlgebra> {
    let mut parts = Vec::new();
    for src in [a, b] {
        let value = parse_element(src)?.eval(&spec.bindings)?;
        parts.push(spec.field.element(&value)?);
    }
    QuaternionAlgebra::new(&parts[0], &parts[1])
}

/// `empty`, or comma-separated tokens: `p` for every place above p, `p:t`
/// for the place above p in the coset of t.
pub fn parse_trust(spec: &FieldSpec, src: &str) -> Result<Vec<FinitePlace>> {
    if src.trim() == "empty" {
        return Ok(Vec::new());
    }
    let bad = |tok: &str| Error::Invalid(format!("--trust-ramf token {tok:?}: expected p or p:t"));
    let mut out = Vec::new();
    for tok in src.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (p, t) = match tok.split_once(':') {
            Some((p, t)) => (p, Some(t.parse::<u64>().map_err(|_| bad(tok))?)),
            None => (tok, None),
        };
        let p = p.parse::<u64>().map_err(|_| bad(tok))?;
        match t {
            Some(t) => out.push(place_with_rep(&spec.field, p, t)?),
            None => out.extend(splitting_type(&spec.field, p)?.places),
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

pub fn ramification(alg: &QuaternionAlgebra, trusted: Option<&[FinitePlace]>) -> Result<RamificationData> {
    match trusted {
        Some(t) => RamificationData::with_trusted(alg, t),
        None => RamificationData::compute(alg),
    }
}

pub fn field_report(command: &str, spec: &FieldSpec) -> Report {
    let k = &spec.field;
    let mut r = Report::new("field", command, Some(k.describe()));
    r.results = json!({
        "spec": spec.source,
        "minimal_conductor": k.minimal_conductor(),
        "embedding_representatives": k.embedding_reps(),
        "names": spec.bindings.iter()
            .filter(|(_, v)| k.contains(v))
            .map(|(n, v)| json!({ "name": n, "value": v.serialize() }))
            .collect::<Vec<_>>(),
    });
    r
}

pub fn split_report(command: &str, spec: &FieldSpec, lo: u64, hi: u64) -> Result<Report> {
    let k = &spec.field;
    let mut r = Report::new("split", command, Some(k.describe()));
    let mut rows = Vec::new();
    for p in (lo.max(2)..=hi).filter(|&p| crate::cyclo::units::is_prime(p)) {
        let s = splitting_type(k, p)?;
        rows.push(json!({
            "p": p,
            "e": s.e,
            "f": s.f,
            "g": s.g,
            "places": s.places.iter().map(PlaceSummary::from).collect::<Vec<_>>(),
        }));
    }
    r.results = json!({ "range": [lo, hi], "primes": rows });
    Ok(r)
}

fn ram_json(ram: &RamificationData) -> Result<Value> {
    let alg = ram.algebra();
    Ok(json!({
        "a": element_string(alg.a()),
        "b": element_string(alg.b()),
        "archimedean_places": ram.archimedean_count(),
        "ram_infinite": ram.ram_infinite().iter().map(|v| v.label()).collect::<Vec<_>>(),
        "finite": ram.entries().iter().map(|e| json!({
            "place": PlaceSummary::from(&e.place),
            "ramified": e.ramified,
            "provenance": e.provenance,
        })).collect::<Vec<_>>(),
        "ram_finite": ram.ram_finite().iter().map(|v| v.label()).collect::<Vec<_>>(),
        "undetermined": ram.undetermined().iter().map(|v| v.label()).collect::<Vec<_>>(),
        "unresolved_cofactors": ram.unresolved_cofactors().iter().map(|n| n.to_string()).collect::<Vec<_>>(),
        "conflicts": ram.conflicts(),
        "parity_holds": ram.parity_holds(),
        "fuchsian": fuchsian_check(alg)?,
        "matrix_convention": alg.convention(),
    }))
}

fn ram_status(ram: &RamificationData) -> Status {
    if !ram.conflicts().is_empty() {
        Status::Fail
    } else if ram.is_complete() {
        Status::Pass
    } else {
        Status::Undetermined
    }
}

fn trust_note(trusted: Option<&[FinitePlace]>) -> Option<String> {
    trusted.map(|t| {
        let names: Vec<String> = t.iter().map(|v| v.label()).collect();
        format!(
            "Ram_f supplied as trusted data: {{{}}}; only places local arithmetic cannot decide take their status from it",
            names.join(", ")
        )
    })
}

pub fn ram_report(command: &str, ram: &RamificationData, trusted: Option<&[FinitePlace]>) -> Result<Report> {
    let mut r = Report::new("ram", command, Some(ram.algebra().field().describe()));
    r.notes.extend(trust_note(trusted));
    r.results = ram_json(ram)?;
    r.status = ram_status(ram);
    Ok(r)
}

pub fn periods_report(
    command: &str,
    ram: &RamificationData,
    trusted: Option<&[FinitePlace]>,
    max: Option<u64>,
) -> Result<Report> {
    let mut r = Report::new("periods", command, Some(ram.algebra().field().describe()));
    r.notes.extend(trust_note(trusted));
    let set = period_set(ram, max, DEFAULT_WITNESS_BOUND)?;
    r.notes.push(format!(
        "m examined up to {} and only where φ(m) ≤ 2[k:Q]; larger m cannot have cos 2π/m in k",
        set.bound
    ));
    let tests: Vec<Value> = set
        .reports
        .iter()
        .map(|p| {
            json!({
                "m": p.m,
                "verdict": p.in_period_set,
                "witness": p.witness.as_ref().map(|w| w.serialize()),
                "decided_by_witness": p.decided_by_witness,
                "places": p.bhn.as_ref().map(|b| &b.checks),
            })
        })
        .collect();
    r.results = json!({
        "members": set.members,
        "undetermined": set.undetermined,
        "bound": set.bound,
        "tests": tests,
        "ramification": ram_json(ram)?,
    });
    r.status = if set.undetermined.is_empty() { Status::Pass } else { Status::Undetermined };
    Ok(r)
}

fn invariant_json(d: &AlgebraInvariantData) -> Value {
    json!({
        "ram_finite": d.ram_finite.iter().map(|v| v.label()).collect::<Vec<_>>(),
        "undetermined": d.undetermined.iter().map(|v| v.label()).collect::<Vec<_>>(),
        "unramified_identity": d.unramified_identity,
    })
}

pub fn galois_report(command: &str, ram: &RamificationData, trusted: Option<&[FinitePlace]>, sigma: u64) -> Result<Report> {
    let mut r = Report::new("galois", command, Some(ram.algebra().field().describe()));
    r.notes.extend(trust_note(trusted));
    r.notes.push(ABELIAN_NOTE.into());
    let data = AlgebraInvariantData::from_ramification(ram);
    let conj = conjugate_invariants(&data, sigma)?;
    let same = same_algebra(&data, &conj)?;
    let inv = verify_period_invariance(ram, sigma)?;
    r.results = json!({
        "sigma": sigma,
        "original": invariant_json(&data),
        "conjugate": invariant_json(&conj),
        "same_algebra": same,
        "period_invariance": inv,
    });
    r.status = if !(inv.periods_equal && inv.odd_route_equal) {
        Status::Fail
    } else if same.is_none() || !inv.original.undetermined.is_empty() {
        Status::Undetermined
    } else {
        Status::Pass
    };
    Ok(r)
}

pub fn verification_report(command: &str, v: &Verification, field: FieldDescription) -> Report {
    let mut r = Report::new("verify", command, Some(field));
    r.results = json!({ "subject": v.subject, "checks": v.checks });
    r.status = if !v.failed().is_empty() {
        Status::Fail
    } else if !v.undetermined().is_empty() {
        Status::Undetermined
    } else {
        Status::Pass
    };
    r
}

/// Report of a command that could not run.
pub fn error_report(command: &str, err: &Error) -> Report {
    let mut r = Report::new("error", command, None);
    r.status = Status::Fail;
    r.results = match err {
        Error::Parse { offset, expected, found } => json!({
            "message": err.to_string(),
            "offset": offset,
            "expected": expected,
            "found": found,
        }),
        _ => json!({ "message": err.to_string() }),
    };
    r
}

impl From<Verdict> for Status {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::Yes => Status::Pass,
            Verdict::No => Status::Fail,
            Verdict::Undetermined => Status::Undetermined,
        }
    }
}

impl From<Outcome> for Status {
    fn from(o: Outcome) -> Self {
        match o {
            Outcome::Pass => Status::Pass,
            Outcome::Fail => Status::Fail,
            Outcome::Undetermined => Status::Undetermined,
        }
    }
}

use super::Report;
use serde_json::Value;
use std::fmt::Write;

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            Some(format!("[{}]", a.iter().map(|x| scalar(x).unwrap()).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn walk(out: &mut String, path: &str, v: &Value) {
    if let Some(s) = scalar(v) {
        let _ = writeln!(out, "{path} = {s}");
        return;
    }
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                walk(out, &format!("{path}.{k}"), x);
            }
        }
        Value::Array(a) => {
            for (n, x) in a.iter().enumerate() {
                walk(out, &format!("{path}[{n}]"), x);
            }
        }
        _ => unreachable!(),
    }
}

/// Line-oriented rendering of the same data as the JSON form: a header,
/// then one `path = value` line per leaf.
pub fn render_text(r: &Report) -> String {
    let mut out = String::new();
    let status = serde_json::to_value(r.status).expect("plain data");
    let _ = writeln!(out, "{} [{}] {} ({})", r.kind, status.as_str().unwrap_or_default(), r.command, r.schema);
    if let Some(f) = &r.field {
        let _ = writeln!(
            out,
            "field: conductor {}, fixing <{}>, degree {}{}",
            f.conductor,
            f.fixing_generators.iter().map(u64::to_string).collect::<Vec<_>>().join(","),
            f.degree,
            if f.totally_real { ", totally real" } else { "" }
        );
    }
    for n in &r.notes {
        let _ = writeln!(out, "note: {n}");
    }
    walk(&mut out, "results", &r.results);
    out
}

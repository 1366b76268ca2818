use std::io::Write;

use clap::ValueEnum;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crossrank::rank::RankBracket;

#[derive(Clone, Copy, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Sets `key` to "p/q" and `key_decimal` to its approximation.
pub fn put(v: &mut Value, key: &str, q: &BigRational) {
    v[key] = json!(q.to_string());
    v[format!("{key}_decimal")] = json!(q.to_f64().unwrap_or(f64::NAN));
}

pub fn bracket_json(b: &RankBracket) -> Value {
    let mut v = json!({
        "size": b.size,
        "level": b.level,
        "cutoff": b.cutoff,
        "components": b.component_count,
        "clamped": b.clamped,
    });
    put(&mut v, "lower", &b.lower);
    put(&mut v, "upper", &b.upper);
    put(&mut v, "width", &(&b.upper - &b.lower));
    put(&mut v, "covered_mass", &b.covered_mass);
    put(&mut v, "substitution_error", &b.substitution_error);
    v
}

pub fn merge(into: &mut Value, from: Value) {
    if let (Value::Object(a), Value::Object(b)) = (into, from) {
        a.extend(b);
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// First array-of-objects field, if any: these become the rows.
fn table(v: &Map<String, Value>) -> Option<(&str, &Vec<Value>)> {
    v.iter().find_map(|(k, x)| match x {
        Value::Array(a) if a.first().is_some_and(Value::is_object) => Some((k.as_str(), a)),
        _ => None,
    })
}

fn columns(rows: &[Value]) -> Vec<String> {
    let mut cols: Vec<String> = Vec::new();
    for r in rows {
        for k in r.as_object().into_iter().flat_map(|o| o.keys()) {
            if !cols.contains(k) {
                cols.push(k.clone());
            }
        }
    }
    cols
}

fn csv(v: &Value) -> String {
    let Some(o) = v.as_object() else { return cell(v) };
    if let Some(Value::Array(vals)) = o.get("values") {
        return vals.iter().map(cell).collect::<Vec<_>>().join(",");
    }
    let rows: Vec<Value> = match table(o) {
        Some((_, rows)) => rows.clone(),
        None => vec![v.clone()],
    };
    let cols = columns(&rows);
    let mut s = cols.join(",");
    for r in &rows {
        s.push('\n');
        let line: Vec<String> = cols
            .iter()
            .map(|c| quote(&cell(r.get(c).unwrap_or(&Value::Null))))
            .collect();
        s.push_str(&line.join(","));
    }
    s
}

fn text(v: &Value) -> String {
    let Some(o) = v.as_object() else { return cell(v) };
    let mut s = String::new();
    if let Some(Value::Array(crit)) = o.get("criteria") {
        for c in crit {
            s.push_str(&format!(
                "{} AC{} {}: {}\n",
                if c["passed"].as_bool() == Some(true) {
                    "PASS"
                } else {
                    "FAIL"
                },
                c["id"],
                cell(&c["name"]),
                cell(&c["detail"]),
            ));
        }
        let failed = crit.iter().filter(|c| c["passed"].as_bool() != Some(true)).count();
        s.push_str(&format!("{} passed, {} failed", crit.len() - failed, failed));
        return s;
    }
    for (k, x) in o {
        match x {
            Value::Array(a) if a.first().is_some_and(Value::is_object) => {
                s.push_str(k);
                s.push_str(":\n");
                let cols = columns(a);
                for r in a {
                    let fields: Vec<String> = cols.iter().map(|c| format!("{c}={}", cell(&r[c.as_str()]))).collect();
                    s.push_str("  ");
                    s.push_str(&fields.join(" "));
                    s.push('\n');
                }
            }
            _ => s.push_str(&format!("{k}: {}\n", cell(x))),
        }
    }
    s.pop();
    s
}

pub fn emit(v: &Value, f: Format) {
    let body = match f {
        Format::Json => serde_json::to_string_pretty(v).expect("json"),
        Format::Csv => csv(v),
        Format::Text => text(v),
    };
    let _ = writeln!(std::io::stdout().lock(), "{body}");
}

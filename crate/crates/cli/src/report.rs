//! Report documents and their JSON / text rendering.

use std::fmt::Write as _;

use ginv_core::{ComplexMatrix, Tolerance};
use serde_json::{json, Map, Value};

use crate::matrix_file::{serialize_matrix, Format};

/// The document printed by every reporting subcommand. Object keys are
/// sorted, so equal inputs give byte-identical output.
pub(crate) fn document(
    command: Vec<String>,
    tol: &Tolerance,
    result: Option<Value>,
    error: Option<String>,
    exit_status: i32,
) -> Value {
    let mut doc = Map::new();
    doc.insert("command".into(), json!(command));
    doc.insert(
        "tolerance".into(),
        json!({ "rank_rtol": tol.rank_rtol, "eq_atol": tol.eq_atol }),
    );
    if let Some(r) = result {
        doc.insert("result".into(), r);
    }
    if let Some(e) = error {
        doc.insert("error".into(), json!(e));
    }
    doc.insert("exit_status".into(), json!(exit_status));
    Value::Object(doc)
}

pub(crate) fn render(doc: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(doc).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = String::new();
            text(&mut s, doc, 0);
            s
        }
    }
}

fn as_matrix(v: &Value) -> Option<ComplexMatrix> {
    let obj = v.as_object()?;
    if obj.len() != 3
        || !["rows", "cols", "data"]
            .iter()
            .all(|k| obj.contains_key(*k))
    {
        return None;
    }
    serde_json::from_value(v.clone()).ok()
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Object(_) | Value::Array(_))
}

fn text(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (key, val) in map {
                if let Some(m) = as_matrix(val) {
                    let _ = writeln!(out, "{pad}{key}: {}x{}", m.rows(), m.cols());
                    for line in serialize_matrix(&m, Format::Text).lines() {
                        let _ = writeln!(out, "{pad}  {line}");
                    }
                } else if is_scalar(val) {
                    let _ = writeln!(out, "{pad}{key}: {}", scalar(val));
                } else if let Value::Array(items) = val {
                    if items.iter().all(is_scalar) {
                        let list: Vec<String> = items.iter().map(scalar).collect();
                        let _ = writeln!(out, "{pad}{key}: [{}]", list.join(", "));
                    } else {
                        let _ = writeln!(out, "{pad}{key}:");
                        text(out, val, depth + 1);
                    }
                } else {
                    let _ = writeln!(out, "{pad}{key}:");
                    text(out, val, depth + 1);
                }
            }
        }
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                let _ = writeln!(out, "{pad}- [{i}]");
                text(out, item, depth + 1);
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other));
        }
    }
}

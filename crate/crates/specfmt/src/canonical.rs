//! The canonical text layout: two-space indentation, with any array or
//! object that holds no nested object and fits the line kept on one line.

use serde_json::Value;

const WIDTH: usize = 100;

pub fn to_text(value: &Value) -> String {
    let mut out = String::new();
    write_value(value, 0, &mut out);
    out.push('\n');
    out
}

fn has_object(v: &Value) -> bool {
    match v {
        Value::Object(m) => m.values().any(|x| matches!(x, Value::Object(_)) || has_object(x)),
        Value::Array(a) => a.iter().any(|x| matches!(x, Value::Object(_)) || has_object(x)),
        _ => false,
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::Array(a) => {
            let items: Vec<String> = a.iter().map(inline).collect();
            format!("[{}]", items.join(", "))
        }
        Value::Object(m) => {
            let items: Vec<String> = m.iter().map(|(k, x)| format!("{}: {}", key(k), inline(x))).collect();
            format!("{{{}}}", items.join(", "))
        }
        scalar => scalar.to_string(),
    }
}

fn key(k: &str) -> String {
    Value::String(k.to_string()).to_string()
}

/// Writes `v` starting at the current column, which is `indent` deep.
fn write_value(v: &Value, indent: usize, out: &mut String) {
    let column = out.len() - out.rfind('\n').map_or(0, |k| k + 1);
    let flat = inline(v);
    let is_container = matches!(v, Value::Array(_) | Value::Object(_));
    if !is_container || (!has_object(v) && column + flat.len() <= WIDTH) {
        out.push_str(&flat);
        return;
    }
    let pad = "  ".repeat(indent + 1);
    match v {
        Value::Array(a) if a.is_empty() => out.push_str("[]"),
        Value::Object(m) if m.is_empty() => out.push_str("{}"),
        Value::Array(a) => {
            out.push_str("[\n");
            for (i, x) in a.iter().enumerate() {
                out.push_str(&pad);
                write_value(x, indent + 1, out);
                out.push_str(if i + 1 < a.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push(']');
        }
        Value::Object(m) => {
            out.push_str("{\n");
            for (i, (k, x)) in m.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&key(k));
                out.push_str(": ");
                write_value(x, indent + 1, out);
                out.push_str(if i + 1 < m.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push('}');
        }
        _ => unreachable!("scalars are written flat"),
    }
}

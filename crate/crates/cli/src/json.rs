//! Canonical JSON text: objects and nested arrays one entry per line, arrays
//! of scalars on a single line.

use serde::Serialize;
use serde_json::Value;

pub fn to_canonical<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("report types serialize");
    let mut out = String::new();
    write_value(&v, 0, &mut out);
    out.push('\n');
    out
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn scalar(v: &Value) -> String {
    serde_json::to_string(v).unwrap()
}

fn pad(out: &mut String, indent: usize) {
    for _ in 0..indent {
        out.push_str("  ");
    }
}

fn write_value(v: &Value, indent: usize, out: &mut String) {
    match v {
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) if items.iter().all(is_scalar) => {
            out.push('[');
            for (k, item) in items.iter().enumerate() {
                if k > 0 {
                    out.push_str(", ");
                }
                out.push_str(&scalar(item));
            }
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (k, item) in items.iter().enumerate() {
                pad(out, indent + 1);
                write_value(item, indent + 1, out);
                if k + 1 < items.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            pad(out, indent);
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (k, (key, item)) in map.iter().enumerate() {
                pad(out, indent + 1);
                out.push_str(&scalar(&Value::String(key.clone())));
                out.push_str(": ");
                write_value(item, indent + 1, out);
                if k + 1 < map.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            pad(out, indent);
            out.push('}');
        }
        _ => out.push_str(&scalar(v)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout() {
        let v = serde_json::json!({"q": 3, "tuples": [[0, 1], [1, 0]], "e": [], "s": "x"});
        assert_eq!(
            to_canonical(&v),
            "{\n  \"q\": 3,\n  \"tuples\": [\n    [0, 1],\n    [1, 0]\n  ],\n  \"e\": [],\n  \"s\": \"x\"\n}\n"
        );
        let back: Value = serde_json::from_str(&to_canonical(&v)).unwrap();
        assert_eq!(back, v);
    }
}

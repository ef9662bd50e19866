//! Reports are `serde_json::Value` trees with sorted keys. The same tree is
//! printed either as JSON or as indented `key: value` text.

use planefol_core::bounds::QuadraticSurd;
use planefol_core::field::ProjectivePoint;
use planefol_core::rational::format_fraction;
use planefol_core::{MPoly, Rational};
use serde_json::{json, Value};

pub fn rat(r: &Rational) -> Value {
    Value::String(format_fraction(r))
}

pub fn poly(p: &MPoly) -> Value {
    Value::String(p.to_string())
}

pub fn point(p: &ProjectivePoint) -> Value {
    Value::Array(p.0.iter().map(rat).collect())
}

pub fn surd(s: &QuadraticSurd) -> Value {
    json!({
        "a": rat(s.a()),
        "b": rat(s.b()),
        "radicand": s.radicand(),
        "text": s.to_string(),
        "floor": s.floor().to_string(),
    })
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("null".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) if s.is_empty() => Some("\"\"".into()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.is_empty() => Some("[]".into()),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => Some(format!(
            "[{}]",
            a.iter().map(|x| scalar(x).unwrap()).collect::<Vec<_>>().join(", ")
        )),
        Value::Object(o) if o.is_empty() => Some("{}".into()),
        _ => None,
    }
}

fn render_into(out: &mut String, v: &Value, indent: usize) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match scalar(x) {
                    Some(s) if !s.contains('\n') => out.push_str(&format!("{pad}{k}: {s}\n")),
                    Some(s) => {
                        out.push_str(&format!("{pad}{k}: |\n"));
                        for line in s.lines() {
                            out.push_str(&format!("{pad}  {line}\n"));
                        }
                    }
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_into(out, x, indent + 2);
                    }
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        let mut inner = String::new();
                        render_into(&mut inner, x, indent + 2);
                        out.push_str(&format!("{pad}- {}\n", &inner[indent + 2..].trim_end_matches('\n')));
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap())),
    }
}

/// Indented `key: value` text; lists of records use `- ` markers.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    render_into(&mut out, v, 0);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_layout() {
        let v = json!({"b": [{"p": "x", "q": [1, 2]}, {"p": "y", "q": []}], "a": "1/2", "c": {"d": true}});
        let expected = "a: 1/2\nb:\n  - p: x\n    q: [1, 2]\n  - p: y\n    q: []\nc:\n  d: true\n";
        assert_eq!(render_text(&v), expected);
    }
}

//! Indented plain-text rendering of a JSON document.

use serde_json::Value;

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(xs) if xs.is_empty() => Some("[]".into()),
        Value::Array(xs) if xs.iter().all(|x| !x.is_object() && !x.is_array()) => {
            Some(format!("[{}]", xs.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        Value::Array(xs) if xs.iter().all(|x| scalar(x).is_some() && x.is_array()) => {
            Some(format!("[{}]", xs.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        Value::Object(o) if o.is_empty() => Some("{}".into()),
        _ => None,
    }
}

fn write(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(o) => {
            for (k, x) in o {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        write(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}[{i}]\n"));
                        write(x, indent + 1, out);
                    }
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar(v).unwrap_or_default())),
    }
}

pub fn render(v: &Value) -> String {
    let mut out = String::new();
    write(v, 0, &mut out);
    out
}

use std::io::Write;
use std::path::Path;

use contact_core::exact::format_q;
use contact_core::Q;
use num_bigint::BigInt;
use serde_json::{json, Value};

pub fn q(x: &Q) -> Value {
    Value::String(format_q(x))
}

pub fn qs(xs: &[Q]) -> Value {
    Value::Array(xs.iter().map(q).collect())
}

pub fn ints(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(|x| Value::String(x.to_string())).collect())
}

/// Wraps a result with the command name and the formulas behind it.
pub fn document(command: &str, result: Value, provenance: Value) -> Value {
    json!({
        "command": command,
        "result": result,
        "provenance": provenance,
    })
}

pub fn emit(doc: &Value, out: Option<&Path>) -> std::io::Result<()> {
    let mut text = serde_json::to_string_pretty(doc).expect("JSON values always serialize");
    text.push('\n');
    match out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

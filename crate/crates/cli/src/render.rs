//! Output formats for reports: pretty JSON, `key: value` text, and a
//! single-row CSV keyed by dotted paths.

use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
    Csv,
}

/// Flattens nested objects into dotted keys; arrays stay compact JSON.
pub fn flatten(v: &Value) -> Vec<(String, String)> {
    fn go(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
        match v {
            Value::Object(map) => {
                for (k, child) in map {
                    let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    go(&key, child, out);
                }
            }
            Value::String(s) => out.push((prefix.to_string(), s.clone())),
            other => out.push((prefix.to_string(), other.to_string())),
        }
    }
    let mut out = Vec::new();
    go("", v, &mut out);
    out
}

pub fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(v).expect("serialisable");
            s.push('\n');
            s
        }
        Format::Text => flatten(v).into_iter().map(|(k, val)| format!("{k}: {val}\n")).collect(),
        Format::Csv => {
            let rows = flatten(v);
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(rows.iter().map(|(k, _)| k)).expect("in-memory write");
            w.write_record(rows.iter().map(|(_, v)| v)).expect("in-memory write");
            String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
        }
    }
}

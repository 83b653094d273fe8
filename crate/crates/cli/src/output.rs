//! Deterministic CSV/JSON emission: '.' decimal, 17 significant digits
//! (round-trippable doubles), no timestamps. The metadata header carries
//! the tool version only and can be dropped with --no-meta for byte-
//! diffable output.

use std::io::Write;
use std::path::Path;

pub const TOOL_META: &str = concat!("gaplab ", env!("CARGO_PKG_VERSION"));

/// 17-significant-digit float field; empty for missing values.
pub fn field(v: Option<f64>) -> String {
    match v {
        Some(x) => format!("{x:.16e}"),
        None => String::new(),
    }
}

pub fn write_text(path: Option<&Path>, text: &str) -> Result<(), String> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .map_err(|e| format!("cannot write stdout: {e}"))
        }
    }
}

pub fn csv_document(meta: bool, header: &str, rows: &[String]) -> String {
    let mut doc = String::new();
    if meta {
        doc.push_str("# ");
        doc.push_str(TOOL_META);
        doc.push('\n');
    }
    doc.push_str(header);
    doc.push('\n');
    for row in rows {
        doc.push_str(row);
        doc.push('\n');
    }
    doc
}

pub fn json_document(meta: bool, value: serde_json::Value) -> String {
    let wrapped = if meta {
        let mut map = serde_json::Map::new();
        map.insert("tool".into(), serde_json::Value::String(TOOL_META.into()));
        match value {
            serde_json::Value::Object(obj) => {
                for (k, v) in obj {
                    map.insert(k, v);
                }
                serde_json::Value::Object(map)
            }
            other => {
                map.insert("result".into(), other);
                serde_json::Value::Object(map)
            }
        }
    } else {
        value
    };
    let mut text = serde_json::to_string_pretty(&wrapped).expect("json serialization");
    text.push('\n');
    text
}

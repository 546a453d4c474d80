//! Report assembly and JSON emission with fixed-precision floats.
//!
//! Every float in emitted JSON is written with 17 significant digits
//! (`{:.16e}`), enough to round-trip any f64 exactly; integers pass through
//! unchanged. Output files are written to a temp file in the target
//! directory and renamed into place.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde_json::Value;

/// A finished run: tool version, echoed configuration, results and timing.
#[derive(Debug, Clone)]
pub struct Report {
    pub version: String,
    pub config: Value,
    pub results: Value,
    pub wall_time_ms: f64,
}

impl Report {
    pub fn new(config: Value, results: Value, wall_time_ms: f64) -> Self {
        Self {
            version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            results,
            wall_time_ms,
        }
    }

    pub fn to_value(&self) -> Value {
        serde_json::json!({
            "version": self.version,
            "config": self.config,
            "results": self.results,
            "wall_time_ms": self.wall_time_ms,
        })
    }
}

fn format_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        // non-finite values have no JSON representation
        "null".to_string()
    }
}

fn write_value(value: &Value, out: &mut String) {
    match value {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if n.is_f64() {
                out.push_str(&format_f64(n.as_f64().unwrap()));
            } else {
                out.push_str(&n.to_string());
            }
        }
        Value::String(s) => {
            out.push_str(&serde_json::to_string(s).expect("string serializes"));
        }
        Value::Array(items) => {
            out.push('[');
            for (k, item) in items.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                write_value(item, out);
            }
            out.push(']');
        }
        Value::Object(map) => {
            out.push('{');
            for (k, (key, item)) in map.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                out.push_str(&serde_json::to_string(key).expect("key serializes"));
                out.push(':');
                write_value(item, out);
            }
            out.push('}');
        }
    }
}

/// Serializes with 17-significant-digit floats.
pub fn to_json_string(value: &Value) -> String {
    let mut out = String::new();
    write_value(value, &mut out);
    out
}

/// Writes atomically: temp file in the destination directory, then rename.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let tmp = match dir {
        Some(d) => d.join(format!(
            ".{}.tmp{}",
            path.file_name().and_then(|n| n.to_str()).unwrap_or("out"),
            std::process::id()
        )),
        None => std::path::PathBuf::from(format!(".krlip.tmp{}", std::process::id())),
    };
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.write_all(b"\n")?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)
}

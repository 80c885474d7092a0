use std::fmt::Write as _;
use std::io::Write as _;

use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

/// Ordered key/value report, printed as aligned text or as one JSON object.
#[derive(Debug, Default)]
pub struct Report {
    fields: Vec<(String, Value)>,
    json_only: Vec<(String, Value)>,
    lines: Vec<String>,
}

impl Report {
    pub fn new(command: &str, input_digest: String) -> Self {
        let mut r = Report::default();
        r.set("command", command);
        r.set("version", env!("CARGO_PKG_VERSION"));
        r.set("input_digest", input_digest);
        r
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        let value = value.into();
        match self.fields.iter_mut().find(|(k, _)| k == key) {
            Some(slot) => slot.1 = value,
            None => self.fields.push((key.to_string(), value)),
        }
    }

    /// Structured data shown in JSON output only; text output uses `line`.
    pub fn detail(&mut self, key: &str, value: Value) {
        self.json_only.push((key.to_string(), value));
    }

    /// Free-form text appended after the fields in human output only.
    pub fn line(&mut self, text: impl Into<String>) {
        self.lines.push(text.into());
    }

    pub fn to_json(&self) -> Value {
        let map: Map<String, Value> = self.fields.iter().chain(&self.json_only).cloned().collect();
        Value::Object(map)
    }

    pub fn to_text(&self) -> String {
        let width = self.fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in &self.fields {
            let shown = match v {
                Value::String(s) => s.clone(),
                Value::Null => "-".to_string(),
                other => other.to_string(),
            };
            writeln!(out, "{k:<width$}  {shown}").unwrap();
        }
        for l in &self.lines {
            writeln!(out, "{l}").unwrap();
        }
        out
    }

    /// Writes to stdout; a closed pipe is not an error.
    pub fn print(&self, json: bool) {
        let text = if json {
            serde_json::to_string_pretty(&self.to_json()).expect("serializable") + "\n"
        } else {
            self.to_text()
        };
        let _ = std::io::stdout().lock().write_all(text.as_bytes());
    }
}

pub fn digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().fold(String::with_capacity(64), |mut s, b| {
        write!(s, "{b:02x}").unwrap();
        s
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_of_empty_input() {
        assert_eq!(
            digest(b""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }

    #[test]
    fn json_and_text_carry_the_same_fields() {
        let mut r = Report::new("analyze", digest(b"x"));
        r.set("dimension", 4);
        r.set("dual", Value::Null);
        r.set("dimension", 5);
        let json = r.to_json();
        assert_eq!(json["dimension"], 5);
        let text = r.to_text();
        for key in json.as_object().unwrap().keys() {
            assert!(text.contains(key.as_str()));
        }
    }
}

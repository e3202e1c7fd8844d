use std::fmt::Write as _;

use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

/// One command result in all three renderings.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub json: Value,
    pub text: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Report {
    /// A report whose table is the flattened top-level JSON fields.
    pub fn from_json(json: Value, text: String) -> Self {
        let mut rows = Vec::new();
        if let Value::Object(map) = &json {
            for (k, v) in map {
                rows.push(vec![k.clone(), scalar(v)]);
            }
        }
        Report { json, text, header: vec!["key".into(), "value".into()], rows }
    }

    pub fn with_table(mut self, header: &[&str], rows: Vec<Vec<String>>) -> Self {
        self.header = header.iter().map(|h| h.to_string()).collect();
        self.rows = rows;
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("json values always serialize");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut s = self.text.clone();
                if !s.ends_with('\n') {
                    s.push('\n');
                }
                s
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header).expect("in-memory csv");
                for r in &self.rows {
                    w.write_record(r).expect("in-memory csv");
                }
                String::from_utf8(w.into_inner().expect("in-memory csv")).expect("csv input is utf-8")
            }
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// `key: value` lines for the text rendering.
pub fn text_lines(pairs: &[(&str, String)]) -> String {
    let mut out = String::new();
    for (k, v) in pairs {
        let _ = writeln!(out, "{k}: {v}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn renders_all_formats() {
        let r = Report::from_json(json!({"a": 1, "b": "x,y"}), "a is 1".into());
        assert_eq!(r.render(Format::Text), "a is 1\n");
        assert_eq!(r.render(Format::Csv), "key,value\na,1\nb,\"x,y\"\n");
        assert!(r.render(Format::Json).contains("\"a\": 1"));
    }
}

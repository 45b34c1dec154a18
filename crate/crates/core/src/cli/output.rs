//! CSV and plain-text renderings of records.
//!
//! Both flatten each record's JSON object into dotted keys
//! (`minimizer.0.re`, `coherence.c_f_omega`, ...).

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

use super::Record;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Json,
    Csv,
    Human,
}

fn flatten(prefix: &str, value: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                flatten(&key(k), v, out);
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&key(&i.to_string()), v, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

fn fields(record: &Record) -> Vec<(String, String)> {
    let value = serde_json::to_value(record).expect("records serialise");
    let mut out = Vec::new();
    flatten("", &value, &mut out);
    out
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// One CSV block per run of records sharing the same columns; a new header
/// line starts whenever the columns change.
pub fn to_csv(records: &[Record]) -> String {
    let mut out = String::new();
    let mut header: Option<Vec<String>> = None;
    for record in records {
        let (keys, values): (Vec<String>, Vec<String>) = fields(record).into_iter().unzip();
        if header.as_ref() != Some(&keys) {
            let line: Vec<String> = keys.iter().map(|k| csv_cell(k)).collect();
            out.push_str(&line.join(","));
            out.push('\n');
            header = Some(keys);
        }
        let line: Vec<String> = values.iter().map(|v| csv_cell(v)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

pub fn to_human(records: &[Record]) -> String {
    let mut out = String::new();
    for (i, record) in records.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let flag = if record.violation() { "  VIOLATION" } else { "" };
        let fields = fields(record);
        let kind = fields
            .iter()
            .find(|(k, _)| k == "kind")
            .map(|(_, v)| v.as_str())
            .unwrap_or("record");
        out.push_str(&format!("[{} #{}]{flag}\n", kind, i + 1));
        let width = fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in fields.iter().filter(|(k, _)| k != "kind") {
            out.push_str(&format!("  {k:<width$}  {v}\n"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::CombSummary;

    #[test]
    fn csv_flattens_and_repeats_header_on_change() {
        let comb = |n, spacing| {
            Record::Comb(CombSummary { n, spacing, offset: 0, support: (0..n).step_by(spacing).collect() })
        };
        let csv = to_csv(&[comb(4, 2), comb(6, 3), comb(6, 2)]);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "kind,n,spacing,offset,support.0,support.1");
        assert_eq!(lines[1], "comb,4,2,0,0,2");
        assert_eq!(lines[2], "comb,6,3,0,0,3");
        assert_eq!(lines[3], "kind,n,spacing,offset,support.0,support.1,support.2");
        assert_eq!(csv_cell("a,b"), "\"a,b\"");
    }
}

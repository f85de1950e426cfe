use std::collections::BTreeMap;

use serde::Serialize;
use tracegap::report::{all_pass, Check};

/// Everything a command produces: a structured report plus pre-rendered
/// text and CSV views. The JSON view is the report itself; field and map
/// ordering are fixed so runs are diffable.
#[derive(Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub results: serde_json::Value,
    pub checks: Vec<Check>,
}

pub struct Output {
    pub report: Report,
    pub text: String,
    pub csv_header: Vec<&'static str>,
    pub csv_rows: Vec<Vec<String>>,
}

impl Output {
    pub fn passed(&self) -> bool {
        all_pass(&self.report.checks)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.report).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.csv_header.join(","));
        out.push('\n');
        for row in &self.csv_rows {
            let escaped: Vec<String> = row.iter().map(|f| csv_escape(f)).collect();
            out.push_str(&escaped.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut s = self.text.clone();
        if !self.report.checks.is_empty() {
            s.push_str(&checks_text(&self.report.checks));
        }
        s
    }
}

fn csv_escape(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

pub fn checks_text(checks: &[Check]) -> String {
    let mut s = String::new();
    for c in checks {
        if c.pass {
            s.push_str(&format!("  [PASS] {}\n", c.name));
        } else {
            s.push_str(&format!(
                "  [FAIL] {}\n         expected: {}\n         actual:   {}\n",
                c.name, c.expected, c.actual
            ));
        }
    }
    let passed = checks.iter().filter(|c| c.pass).count();
    s.push_str(&format!("checks: {passed}/{} passed\n", checks.len()));
    s
}

pub fn inputs_from<const N: usize>(pairs: [(&str, String); N]) -> BTreeMap<String, String> {
    pairs
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect()
}

//! The single report value every command renders from.

use clext_core::{CheckRow, RelationReport};
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Schema-stable command report:
/// `{command, params, checks: [{name, residual, tol, pass}], data?}`.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub params: Value,
    pub checks: Vec<CheckRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<Value>,
}

/// Floats rendered with 12 significant digits in text and CSV output.
pub fn fmt12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let s = format!("{x:.11e}");
    // trim exponent noise like 3.00000000000e0 -> keep as-is; it is stable
    s
}

fn value_cell(v: &Value) -> String {
    match v {
        Value::Number(n) => match n.as_f64() {
            Some(x) if n.is_f64() => fmt12(x),
            _ => n.to_string(),
        },
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

impl Report {
    pub fn new(command: impl Into<String>, params: Value) -> Self {
        Self {
            command: command.into(),
            params,
            checks: Vec::new(),
            data: None,
        }
    }

    pub fn with_checks(mut self, report: RelationReport) -> Self {
        self.checks.extend(report.checks);
        self
    }

    pub fn with_data(mut self, data: Value) -> Self {
        self.data = Some(data);
        self
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes"),
            Format::Text => self.render_text(),
            Format::Csv => self.render_csv(),
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        out.push_str(&format!("params: {}\n", self.params));
        if !self.checks.is_empty() {
            out.push_str("checks:\n");
            for c in &self.checks {
                out.push_str(&format!(
                    "  {:<40} residual {:>20}  tol {:>12}  {}\n",
                    c.name,
                    fmt12(c.residual),
                    fmt12(c.tol),
                    if c.pass { "PASS" } else { "FAIL" }
                ));
            }
        }
        if let Some(Value::Array(rows)) = &self.data {
            if let Some(Value::Object(first)) = rows.first() {
                let headers: Vec<&String> = first.keys().collect();
                out.push_str(&format!(
                    "data ({} rows): {}\n",
                    rows.len(),
                    headers
                        .iter()
                        .map(|h| h.as_str())
                        .collect::<Vec<_>>()
                        .join(", ")
                ));
                for row in rows {
                    if let Value::Object(obj) = row {
                        let cells: Vec<String> = obj.values().map(value_cell).collect();
                        out.push_str(&format!("  {}\n", cells.join("  ")));
                    }
                }
            }
        } else if let Some(other) = &self.data {
            out.push_str(&format!("data: {other}\n"));
        }
        out.push_str(&format!(
            "overall: {}\n",
            if self.pass() { "PASS" } else { "FAIL" }
        ));
        out
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        if let Some(Value::Array(rows)) = &self.data {
            if let Some(Value::Object(first)) = rows.first() {
                let headers: Vec<String> = first.keys().cloned().collect();
                out.push_str(&headers.join(","));
                out.push('\n');
                for row in rows {
                    if let Value::Object(obj) = row {
                        let cells: Vec<String> =
                            headers.iter().map(|h| value_cell(&obj[h])).collect();
                        out.push_str(&cells.join(","));
                        out.push('\n');
                    }
                }
                return out;
            }
        }
        out.push_str("name,residual,tol,pass\n");
        for c in &self.checks {
            out.push_str(&format!(
                "{},{},{},{}\n",
                c.name,
                fmt12(c.residual),
                fmt12(c.tol),
                c.pass
            ));
        }
        out
    }
}

//! CSV and JSON rendering. Numbers in CSV carry 17 significant digits.

use super::config::{OutputFormat, RunConfig};
use serde::Serialize;
use serde_json::{json, Value};

/// Formats a double with 17 significant digits (exact round trip).
pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        "NaN".to_string()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{x:.16e}")
    }
}

/// A header plus rows of preformatted cells.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Self {
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push_numbers(&mut self, row: &[f64]) {
        self.rows.push(row.iter().map(|&x| fmt_num(x)).collect());
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    /// Comma-separated, header first, LF line endings.
    pub fn to_csv(&self) -> String {
        let mut out = self.headers.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// Constants reported with every JSON document.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Constants {
    pub alpha: f64,
    pub d_k: f64,
    pub unitary_scale: f64,
}

/// Everything a command produces before it is rendered.
#[derive(Debug, Clone)]
pub struct Report {
    pub table: Table,
    pub results: Value,
    pub residuals: Value,
    pub constants: Constants,
}

impl Report {
    pub fn render(&self, cfg: &RunConfig) -> String {
        match cfg.out {
            OutputFormat::Csv => self.table.to_csv(),
            OutputFormat::Json => {
                let doc = json!({
                    "config": cfg,
                    "results": self.results,
                    "residuals": self.residuals,
                    "constants": self.constants,
                });
                let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
                s.push('\n');
                s
            }
        }
    }
}

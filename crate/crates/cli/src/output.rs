//! Rendering of command results as JSON, CSV or plain text.

use std::io::Write;
use std::path::Path;

use clap::ValueEnum;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

/// Header and rows of the CSV form.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    /// Two-column key/value table.
    pub fn key_values(pairs: &[(&str, String)]) -> Self {
        let mut t = Table::new(&["key", "value"]);
        for (k, v) in pairs {
            t.push(vec![k.to_string(), v.clone()]);
        }
        t
    }
}

/// A finished command: its payload in every format plus the check verdict.
pub struct Rendered {
    pub json: serde_json::Value,
    pub table: Table,
    pub pretty: String,
    /// Names of failed checks; empty means pass.
    pub failures: Vec<String>,
}

impl Rendered {
    pub fn new<T: Serialize>(payload: &T, table: Table, pretty: String) -> Self {
        let json = serde_json::to_value(payload).expect("report serializes");
        Rendered { json, table, pretty, failures: Vec::new() }
    }

    pub fn fail_if(mut self, cond: bool, name: &str) -> Self {
        if cond {
            self.failures.push(name.to_string());
        }
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("json");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.table.header).expect("csv header");
                for r in &self.table.rows {
                    w.write_record(r).expect("csv row");
                }
                String::from_utf8(w.into_inner().expect("csv flush")).expect("utf8")
            }
            Format::Pretty => {
                let mut s = self.pretty.clone();
                if !s.ends_with('\n') {
                    s.push('\n');
                }
                s
            }
        }
    }

    pub fn write(&self, format: Format, path: Option<&Path>) -> std::io::Result<()> {
        let text = self.render(format);
        match path {
            Some(p) => std::fs::write(p, text),
            None => std::io::stdout().lock().write_all(text.as_bytes()),
        }
    }
}

/// Fixed-format float for tables.
pub fn f(x: f64) -> String {
    format!("{x:.12}")
}

/// Scientific float for small gaps.
pub fn e(x: f64) -> String {
    format!("{x:.6e}")
}

//! Result tables rendered as aligned text, CSV or JSON. Every format starts
//! with a versioned header.

use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

pub struct Table {
    pub mode: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Bool(true) => "yes".into(),
        Value::Bool(false) => "NO".into(),
        other => other.to_string(),
    }
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Bool(b) => b.to_string(),
        other => cell(other),
    }
}

impl Table {
    pub fn new(mode: &'static str, columns: Vec<&'static str>) -> Self {
        Table { mode, columns, rows: Vec::new() }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Table => self.text(),
            Format::Csv => self.csv(),
            Format::Json => self.json(),
        }
    }

    fn header(&self) -> String {
        format!("# ktype-mult v{SCHEMA_VERSION} mode={}", self.mode)
    }

    fn text(&self) -> String {
        let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(cell).collect()).collect();
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.chars().count()).collect();
        for r in &cells {
            for (w, c) in widths.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |r: Vec<&str>| {
            let parts: Vec<String> = r.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            parts.join("  ").trim_end().to_string()
        };
        let mut out = vec![self.header(), line(self.columns.clone())];
        out.extend(cells.iter().map(|r| line(r.iter().map(String::as_str).collect())));
        out.join("\n") + "\n"
    }

    fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r.iter().map(csv_cell)).expect("in-memory write");
        }
        let body = String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells");
        format!("{}\n{body}", self.header())
    }

    fn json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let m: Map<String, Value> =
                    self.columns.iter().zip(r).map(|(c, v)| (c.to_string(), v.clone())).collect();
                Value::Object(m)
            })
            .collect();
        let doc = json!({ "schema": "ktype-mult", "version": SCHEMA_VERSION, "mode": self.mode, "rows": rows });
        serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
    }
}

/// Exact rationals are printed as JSON integers when integral, `"p/q"` otherwise.
pub fn rat_value(r: &ktype_core::exactalg::Rat) -> Value {
    match ktype_core::exactalg::as_i64(r) {
        Some(v) => json!(v),
        None => json!(r.to_string()),
    }
}

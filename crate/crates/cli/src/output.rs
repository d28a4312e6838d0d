//! Rendering of result tables as aligned text, JSON lines or CSV.
//!
//! Every format starts with a single header line naming the tool version;
//! data rows carry no timestamps, so identical runs give identical bytes.

use std::io::{self, Write};

use num_bigint::BigInt;
use serde_json::{Map, Value};

use crate::args::Format;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub struct Table {
    pub command: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
    /// Closing summary, emitted after the rows in text and JSON.
    pub summary: Option<Map<String, Value>>,
}

impl Table {
    pub fn new(command: &'static str, columns: &[&'static str]) -> Self {
        Table {
            command,
            columns: columns.to_vec(),
            rows: Vec::new(),
            summary: None,
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format, out: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Text => self.render_text(out),
            Format::Json => self.render_json(out),
            Format::Csv => self.render_csv(out),
        }
    }

    fn render_text(&self, out: &mut dyn Write) -> io::Result<()> {
        writeln!(out, "# kleinzeta {VERSION} {}", self.command)?;
        let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(text_cell).collect()).collect();
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.chars().count()).collect();
        for row in &cells {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |items: Vec<&str>| -> String {
            let last = items.len() - 1;
            items
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    if i == last {
                        s.to_string()
                    } else {
                        format!("{s}{}", " ".repeat(widths[i] - s.chars().count()))
                    }
                })
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_string()
        };
        writeln!(out, "{}", line(self.columns.clone()))?;
        for row in &cells {
            writeln!(out, "{}", line(row.iter().map(String::as_str).collect()))?;
        }
        if let Some(summary) = &self.summary {
            let parts: Vec<String> = summary.iter().map(|(k, v)| format!("{k}={}", text_cell(v))).collect();
            writeln!(out, "summary: {}", parts.join(" "))?;
        }
        Ok(())
    }

    fn render_json(&self, out: &mut dyn Write) -> io::Result<()> {
        let mut header = Map::new();
        header.insert("command".into(), Value::from(self.command));
        header.insert("tool".into(), Value::from("kleinzeta"));
        header.insert("version".into(), Value::from(VERSION));
        writeln!(out, "{}", Value::Object(header))?;
        for row in &self.rows {
            let obj: Map<String, Value> = self
                .columns
                .iter()
                .zip(row)
                .map(|(k, v)| (k.to_string(), v.clone()))
                .collect();
            writeln!(out, "{}", Value::Object(obj))?;
        }
        if let Some(summary) = &self.summary {
            let mut wrapped = Map::new();
            wrapped.insert("summary".into(), Value::Object(summary.clone()));
            writeln!(out, "{}", Value::Object(wrapped))?;
        }
        Ok(())
    }

    fn render_csv(&self, out: &mut dyn Write) -> io::Result<()> {
        writeln!(out, "# kleinzeta {VERSION} {}", self.command)?;
        let mut writer = csv::Writer::from_writer(out);
        writer.write_record(&self.columns)?;
        for row in &self.rows {
            writer.write_record(row.iter().map(csv_cell))?;
        }
        writer.flush()
    }
}

fn text_cell(v: &Value) -> String {
    match v {
        Value::Null => "-".to_string(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// An exact integer as a JSON number of arbitrary size.
pub fn big(n: &BigInt) -> Value {
    serde_json::from_str(&n.to_string()).expect("decimal integers are valid JSON")
}

pub fn big_array(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(big).collect())
}

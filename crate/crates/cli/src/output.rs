//! Tabular output shared by every command: CSV with trailing summary rows,
//! or a JSON document with metadata, rows and summary.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Debug)]
pub enum Cell {
    /// Exact integer, rendered in full decimal.
    Int(BigInt),
    Real(f64),
    Text(String),
    Bool(bool),
    Missing,
}

impl From<&BigUint> for Cell {
    fn from(v: &BigUint) -> Self {
        Cell::Int(BigInt::from(v.clone()))
    }
}

impl From<BigInt> for Cell {
    fn from(v: BigInt) -> Self {
        Cell::Int(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v.into())
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v.into())
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        if v.is_finite() {
            Cell::Real(v)
        } else {
            Cell::Missing
        }
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Missing, Cell::from)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_owned())
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl Cell {
    fn csv(&self, precision: usize) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Real(v) => format!("{v:.precision$}"),
            Cell::Text(s) if s.contains([',', '"', '\n']) => {
                format!("\"{}\"", s.replace('"', "\"\""))
            }
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Missing => String::new(),
        }
    }

    fn json(&self, precision: usize) -> Value {
        match self {
            // big integers stay exact as strings
            Cell::Int(v) => Value::String(v.to_string()),
            Cell::Real(v) => {
                let rounded: f64 = format!("{v:.precision$}").parse().unwrap_or(*v);
                json!(rounded)
            }
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Missing => Value::Null,
        }
    }
}

pub struct Table {
    pub command: &'static str,
    pub family: Option<String>,
    pub n: Option<usize>,
    pub seed: Option<u64>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: Vec<(&'static str, Cell)>,
}

impl Table {
    pub fn new(command: &'static str, columns: &[&str]) -> Self {
        Table {
            command,
            family: None,
            n: None,
            seed: None,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            summary: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn summarize(&mut self, key: &'static str, value: impl Into<Cell>) {
        self.summary.push((key, value.into()));
    }

    pub fn render(&self, format: Format, precision: usize) -> String {
        match format {
            Format::Csv => self.csv(precision),
            Format::Json => self.json(precision),
        }
    }

    fn csv(&self, precision: usize) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let fields: Vec<String> = row.iter().map(|c| c.csv(precision)).collect();
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        // summary rows: key, value, then empty fields up to the header width
        let pad = ",".repeat(self.columns.len().saturating_sub(2));
        for (key, value) in &self.summary {
            let _ = writeln!(out, "{key},{}{pad}", value.csv(precision));
        }
        out
    }

    fn json(&self, precision: usize) -> String {
        let mut metadata = Map::new();
        metadata.insert("command".into(), json!(self.command));
        metadata.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
        if let Some(family) = &self.family {
            metadata.insert("family".into(), json!(family));
        }
        if let Some(n) = self.n {
            metadata.insert("n".into(), json!(n));
        }
        if let Some(seed) = self.seed {
            metadata.insert("seed".into(), json!(seed));
        }
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| (c.clone(), v.json(precision)))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let summary: Map<String, Value> = self
            .summary
            .iter()
            .map(|(k, v)| (k.to_string(), v.json(precision)))
            .collect();
        let doc = json!({ "metadata": metadata, "rows": rows, "summary": summary });
        let mut s = serde_json::to_string_pretty(&doc).expect("json values are serializable");
        s.push('\n');
        s
    }
}

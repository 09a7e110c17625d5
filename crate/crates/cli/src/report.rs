//! Tabular output with a metadata block, rendered as CSV or JSON.
//!
//! CSV layout: `# key: value` metadata lines, then one header row and the data
//! rows. Reals are written with 17 significant digits; infinities as `inf` and
//! `-inf`; absent values as `none`. JSON carries the same content as
//! `{"meta", "summary", "columns", "rows"}` with infinities as strings and
//! absent values as `null`.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};
use unimus::RenyiOrder;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Real(f64),
    Order(RenyiOrder),
    Int(u64),
    Bool(bool),
    Text(String),
    Missing,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Real(x) if x.is_nan() => "nan".into(),
            Cell::Real(x) if x.is_infinite() => if *x > 0.0 { "inf" } else { "-inf" }.into(),
            Cell::Real(x) => format!("{x:.16e}"),
            Cell::Order(a) => a.to_string(),
            Cell::Int(n) => n.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Missing => "none".into(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Real(x) | Cell::Order(RenyiOrder::Finite(x)) if x.is_finite() => json!(x),
            Cell::Real(x) if x.is_nan() => json!("nan"),
            Cell::Real(x) => json!(if *x > 0.0 { "inf" } else { "-inf" }),
            Cell::Order(a) => json!(a.to_string()),
            Cell::Int(n) => json!(n),
            Cell::Bool(b) => json!(b),
            Cell::Text(s) => json!(s),
            Cell::Missing => Value::Null,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub seed: u64,
    pub alpha_grid: Option<String>,
    pub params: Vec<(&'static str, String)>,
    pub summary: Vec<(&'static str, Cell)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Report {
    pub fn new(command: &'static str, seed: u64, columns: &[&'static str]) -> Self {
        Self {
            command,
            seed,
            alpha_grid: None,
            params: Vec::new(),
            summary: Vec::new(),
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &'static str, value: impl ToString) -> &mut Self {
        self.params.push((key, value.to_string()));
        self
    }

    pub fn summary(&mut self, key: &'static str, value: Cell) -> &mut Self {
        self.summary.push((key, value));
        self
    }

    pub fn row(&mut self, cells: Vec<Cell>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.csv(),
            Format::Json => self.json(),
        }
    }

    fn csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# command: {}", self.command);
        let _ = writeln!(out, "# seed: {}", self.seed);
        let _ = writeln!(
            out,
            "# alpha_grid: {}",
            self.alpha_grid.as_deref().unwrap_or("none")
        );
        let _ = writeln!(out, "# version: {}", env!("CARGO_PKG_VERSION"));
        for (k, v) in &self.params {
            let _ = writeln!(out, "# param.{k}: {v}");
        }
        for (k, v) in &self.summary {
            let _ = writeln!(out, "# summary.{k}: {}", v.csv());
        }
        let _ = writeln!(out, "{}", self.columns.join(","));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    fn json(&self) -> String {
        let params: Map<String, Value> = self
            .params
            .iter()
            .map(|(k, v)| (k.to_string(), json!(v)))
            .collect();
        let summary: Map<String, Value> = self
            .summary
            .iter()
            .map(|(k, v)| (k.to_string(), v.json()))
            .collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Array(r.iter().map(Cell::json).collect()))
            .collect();
        let doc = json!({
            "meta": {
                "command": self.command,
                "seed": self.seed,
                "alpha_grid": self.alpha_grid,
                "version": env!("CARGO_PKG_VERSION"),
                "params": params,
            },
            "summary": summary,
            "columns": self.columns,
            "rows": rows,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
        s.push('\n');
        s
    }
}

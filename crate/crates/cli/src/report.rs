//! Tabular reports written as CSV or JSON.
//!
//! A report is a list of named tables. In CSV form the first table goes to
//! the requested path and every further table to `<stem>.<table>.csv` next to
//! it; on stdout the tables are printed one after another, separated by a
//! blank line. In JSON form the whole report is one document:
//!
//! ```json
//! {"command": "...", "tables": [{"name": "...", "columns": ["..."], "rows": [[...]]}]}
//! ```

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Bool(bool),
}

impl Cell {
    fn to_csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => v.to_string(),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(s) if s.contains([',', '"', '\n']) => {
                format!("\"{}\"", s.replace('"', "\"\""))
            }
            Cell::Text(s) => s.clone(),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<u8> for Cell {
    fn from(v: u8) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Self {
            name: name.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(
            row.len(),
            self.columns.len(),
            "row width in table {}",
            self.name
        );
        self.rows.push(row);
    }

    /// Index of a column by name.
    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::to_csv).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub tables: Vec<Table>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            tables: Vec::new(),
        }
    }

    pub fn table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.name == name)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }

    /// All tables as CSV, separated by blank lines.
    pub fn to_csv(&self) -> String {
        self.tables
            .iter()
            .map(Table::to_csv)
            .collect::<Vec<_>>()
            .join("\n")
    }

    /// Paths the CSV tables are written to for a given output path.
    pub fn csv_paths(&self, out: &Path) -> Vec<PathBuf> {
        let stem = out.file_stem().and_then(|s| s.to_str()).unwrap_or("report");
        self.tables
            .iter()
            .enumerate()
            .map(|(i, t)| {
                if i == 0 {
                    out.to_path_buf()
                } else {
                    out.with_file_name(format!("{stem}.{}.csv", t.name))
                }
            })
            .collect()
    }

    pub fn emit(&self, format: Format, out: Option<&Path>) -> std::io::Result<()> {
        match (format, out) {
            (Format::Json, Some(p)) => fs::write(p, self.to_json()),
            (Format::Json, None) => std::io::stdout().write_all(self.to_json().as_bytes()),
            (Format::Csv, Some(p)) => {
                for (t, path) in self.tables.iter().zip(self.csv_paths(p)) {
                    fs::write(path, t.to_csv())?;
                }
                Ok(())
            }
            (Format::Csv, None) => std::io::stdout().write_all(self.to_csv().as_bytes()),
        }
    }
}

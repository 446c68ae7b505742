use crate::config::Check;
use crate::Result;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Int(i64),
    Real(f64),
}

impl Cell {
    pub fn as_f64(self) -> f64 {
        match self {
            Cell::Int(i) => i as f64,
            Cell::Real(x) => x,
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Real(x)
    }
}

impl From<usize> for Cell {
    fn from(i: usize) -> Self {
        Cell::Int(i as i64)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

/// 17 significant digits, so every double survives a text round trip.
pub fn format_real(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Table { name: name.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i].as_f64()).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut s = self.columns.join(",");
        s.push('\n');
        for row in &self.rows {
            for (i, c) in row.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                match c {
                    Cell::Int(v) => write!(s, "{v}").unwrap(),
                    Cell::Real(v) => s.push_str(&format_real(*v)),
                }
            }
            s.push('\n');
        }
        s
    }
}

/// What an experiment produced, before it is written anywhere.
#[derive(Debug, Clone, Default)]
pub struct Outcome {
    pub tables: Vec<Table>,
    pub metrics: BTreeMap<String, f64>,
}

impl Outcome {
    pub fn metric(&mut self, name: &str, v: f64) {
        self.metrics.insert(name.to_string(), v);
    }

    pub fn flag(&mut self, name: &str, v: bool) {
        self.metric(name, if v { 1.0 } else { 0.0 });
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub label: String,
    pub metric: String,
    pub value: Option<f64>,
    pub passed: bool,
}

pub fn evaluate(checks: &[Check], metrics: &BTreeMap<String, f64>) -> Vec<CheckResult> {
    checks
        .iter()
        .map(|c| {
            let value = metrics.get(&c.metric).copied();
            CheckResult {
                label: c.label.clone(),
                metric: c.metric.clone(),
                value,
                passed: value.is_some_and(|v| c.holds(v)),
            }
        })
        .collect()
}

/// The JSON summary written next to the CSV tables.
#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub tool: &'static str,
    pub version: &'static str,
    pub name: String,
    pub command: String,
    pub config_hash: String,
    pub metrics: BTreeMap<String, f64>,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
    pub tables: Vec<String>,
    pub runtime_s: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Both,
}

/// Write `contents` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = path.parent().unwrap_or(Path::new("."));
    std::fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// Write tables and summary under `dir`; returns the written paths.
pub fn write_bundle(dir: &Path, tables: &[Table], summary: &Summary, format: Format) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    if format != Format::Json {
        for t in tables {
            let p = dir.join(format!("{}.csv", t.name));
            write_atomic(&p, t.to_csv().as_bytes())?;
            written.push(p);
        }
    }
    if format != Format::Csv {
        let p = dir.join("summary.json");
        let mut json = serde_json::to_string_pretty(summary).expect("summary serialises");
        json.push('\n');
        write_atomic(&p, json.as_bytes())?;
        written.push(p);
    }
    Ok(written)
}

//! Output tables and their CSV form.
//!
//! A file starts with `#`-prefixed metadata lines, then one header row and
//! the data rows. Floats are written in shortest round-trip scientific form,
//! so a file parses back to the exact values that produced it.

use crate::error::{CliError, CliResult};
use crate::svg::{self, PlotSpec};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
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

impl Cell {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Num(v) => Some(*v),
            Cell::Int(v) => Some(*v as f64),
            Cell::Text(_) => None,
        }
    }

    fn render(&self, out: &mut String) {
        match self {
            Cell::Num(v) if v.is_nan() => out.push_str("nan"),
            Cell::Num(v) => write!(out, "{v:e}").unwrap(),
            Cell::Int(v) => write!(out, "{v}").unwrap(),
            Cell::Text(s) => out.push_str(s),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub plot: Option<PlotSpec>,
    /// Extra metadata lines for this file only.
    pub notes: Vec<(String, String)>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Self {
            name: name.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            plot: None,
            notes: Vec::new(),
        }
    }

    pub fn with_plot(mut self, plot: PlotSpec) -> Self {
        self.plot = Some(plot);
        self
    }

    pub fn note(&mut self, key: &str, value: impl ToString) {
        self.notes.push((key.to_string(), value.to_string()));
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width in {}", self.name);
        self.rows.push(row);
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn to_csv(&self, meta: &[(String, String)]) -> String {
        let mut out = String::new();
        for (k, v) in meta.iter().chain(&self.notes) {
            writeln!(out, "# {k} = {v}").unwrap();
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            for (i, cell) in row.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                cell.render(&mut out);
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    CsvSvg,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            "csv+svg" => Ok(Format::CsvSvg),
            _ => Err(format!("unknown format '{s}' (expected csv or csv+svg)")),
        }
    }
}

impl std::fmt::Display for Format {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::CsvSvg => "csv+svg",
        })
    }
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Writes `<name>.csv` (and `<name>.svg`) into `dir`; returns the paths.
pub fn write_tables(dir: &Path, meta: &[(String, String)], tables: &[Table], format: Format) -> CliResult<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|source| CliError::Io {
        path: dir.display().to_string(),
        source,
    })?;
    let mut written = Vec::new();
    for t in tables {
        let path = dir.join(format!("{}.csv", t.name));
        write_file(&path, &t.to_csv(meta))?;
        written.push(path);
        if let (Format::CsvSvg, Some(spec)) = (format, &t.plot) {
            let path = dir.join(format!("{}.svg", t.name));
            write_file(&path, &svg::render(t, spec))?;
            written.push(path);
        }
    }
    Ok(written)
}

/// Parses a CSV produced by [`Table::to_csv`] into metadata, header and rows.
pub fn parse_csv(text: &str) -> (Vec<(String, String)>, Vec<String>, Vec<Vec<String>>) {
    let mut meta = Vec::new();
    let mut lines = text.lines();
    let mut header = Vec::new();
    for line in lines.by_ref() {
        if let Some(rest) = line.strip_prefix("# ") {
            if let Some((k, v)) = rest.split_once(" = ") {
                meta.push((k.to_string(), v.to_string()));
            }
        } else {
            header = line.split(',').map(str::to_string).collect();
            break;
        }
    }
    let rows = lines.map(|l| l.split(',').map(str::to_string).collect()).collect();
    (meta, header, rows)
}

//! Summary tables over first- and second-stage results, rendered as
//! Markdown, CSV or JSON.

mod format;
mod tables;

pub use format::{format_fixed, format_stat};
pub use tables::{
    context_table, frequency_table, group_summary, regression_table, results_table, rts_summary, score_frequency_table,
    slack_summary, summary_table, BinSpec, EdgePolicy, GroupKey,
};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ReportError {
    #[error("row has {found} cells, table has {expected} columns")]
    Arity { expected: usize, found: usize },
    #[error("{0}")]
    Domain(String),
    #[error("invalid bins: {0}")]
    Bins(String),
    #[error("unknown format '{0}' (expected markdown, csv or json)")]
    Format(String),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Text(String),
    Int(i64),
    /// Rendered with a fixed number of decimals.
    Number { value: f64, decimals: usize },
    /// Regression statistic: 4 decimals, scientific below `1e-4`.
    Stat(f64),
    /// Empty class, rendered as `na`.
    Missing,
}

impl Cell {
    pub fn text(s: impl Into<String>) -> Self {
        Cell::Text(s.into())
    }

    pub fn num(value: f64, decimals: usize) -> Self {
        Cell::Number { value, decimals }
    }

    pub fn render(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Int(i) => i.to_string(),
            Cell::Number { value, decimals } => format_fixed(*value, *decimals),
            Cell::Stat(v) => format_stat(*v),
            Cell::Missing => "na".into(),
        }
    }
}

/// JSON keeps full precision: numbers are written as numbers, empty classes
/// as `null`.
impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Cell::Text(t) => s.serialize_str(t),
            Cell::Int(i) => s.serialize_i64(*i),
            Cell::Number { value, .. } | Cell::Stat(value) if value.is_finite() => s.serialize_f64(*value),
            _ => s.serialize_none(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportTable {
    pub title: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub footnotes: Vec<String>,
}

impl ReportTable {
    pub fn new(title: impl Into<String>, headers: &[&str]) -> Self {
        ReportTable {
            title: title.into(),
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
            footnotes: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<Cell>) -> Result<(), ReportError> {
        if row.len() != self.headers.len() {
            return Err(ReportError::Arity {
                expected: self.headers.len(),
                found: row.len(),
            });
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn footnote(&mut self, note: impl Into<String>) {
        self.footnotes.push(note.into());
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Markdown,
    Csv,
    Json,
}

impl Format {
    pub const ALL: [Format; 3] = [Format::Markdown, Format::Csv, Format::Json];

    pub fn extension(self) -> &'static str {
        match self {
            Format::Markdown => "md",
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

impl FromStr for Format {
    type Err = ReportError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "markdown" | "md" => Ok(Format::Markdown),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(ReportError::Format(s.into())),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Markdown => "markdown",
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

fn markdown(t: &ReportTable) -> String {
    let esc = |s: &str| s.replace('|', "\\|");
    let mut out = format!("### {}\n\n", t.title);
    out.push_str(&format!(
        "| {} |\n",
        t.headers.iter().map(|h| esc(h)).collect::<Vec<_>>().join(" | ")
    ));
    let rule: Vec<&str> = (0..t.headers.len())
        .map(|i| if i == 0 { "---" } else { "---:" })
        .collect();
    out.push_str(&format!("| {} |\n", rule.join(" | ")));
    for row in &t.rows {
        let cells: Vec<String> = row.iter().map(|c| esc(&c.render())).collect();
        out.push_str(&format!("| {} |\n", cells.join(" | ")));
    }
    if !t.footnotes.is_empty() {
        out.push('\n');
        for n in &t.footnotes {
            out.push_str(&format!("{n}\n"));
        }
    }
    out
}

fn csv_text(t: &ReportTable) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    // writing to memory cannot fail
    w.write_record(&t.headers).expect("in-memory csv");
    for row in &t.rows {
        w.write_record(row.iter().map(Cell::render)).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("csv output is utf-8")
}

/// Deterministic text rendering of a table.
pub fn render(t: &ReportTable, format: Format) -> String {
    match format {
        Format::Markdown => markdown(t),
        Format::Csv => csv_text(t),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(t).expect("tables serialize");
            s.push('\n');
            s
        }
    }
}

use std::fmt;
use std::str::FromStr;

use serde_json::Value;

use super::ExperimentReport;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    Json,
    Csv,
    #[default]
    Table,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "table" => Ok(Format::Table),
            _ => Err(Error::parse(format!(
                "unknown format {s:?} (expected json, csv or table)"
            ))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Table => "table",
        })
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        v => v.to_string(),
    }
}

/// Column order: keys of the first row, then any new keys in order of appearance.
fn columns(report: &ExperimentReport) -> Vec<String> {
    let mut cols: Vec<String> = Vec::new();
    for row in &report.rows {
        for k in row.keys() {
            if !cols.contains(k) {
                cols.push(k.clone());
            }
        }
    }
    cols
}

/// Deterministic bytes with LF line endings.
pub fn render_report(report: &ExperimentReport, format: Format) -> String {
    match format {
        Format::Json => report.to_json(),
        Format::Csv => render_csv(report),
        Format::Table => render_table(report),
    }
}

fn render_csv(report: &ExperimentReport) -> String {
    let cols = columns(report);
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    if !cols.is_empty() {
        w.write_record(&cols).expect("in-memory write");
    }
    for row in &report.rows {
        let record: Vec<String> = cols.iter().map(|c| row.get(c).map(cell).unwrap_or_default()).collect();
        w.write_record(&record).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf8 cells")
}

fn render_table(report: &ExperimentReport) -> String {
    let mut lines = vec![format!("experiment {}", report.name)];
    for (k, v) in &report.params {
        lines.push(format!("  {k} = {}", cell(v)));
    }
    if let Some(seed) = report.seed {
        lines.push(format!("  seed = {seed}"));
    }
    let cols = columns(report);
    if !cols.is_empty() {
        let cells: Vec<Vec<String>> = report
            .rows
            .iter()
            .map(|row| cols.iter().map(|c| row.get(c).map(cell).unwrap_or_default()).collect())
            .collect();
        let widths: Vec<usize> = cols
            .iter()
            .enumerate()
            .map(|(i, c)| {
                cells
                    .iter()
                    .map(|r| r[i].chars().count())
                    .chain([c.chars().count()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let fmt_line = |items: &[String]| {
            items
                .iter()
                .zip(&widths)
                .map(|(s, w)| format!("{s:<w$}"))
                .collect::<Vec<_>>()
                .join("  ")
        };
        lines.push(String::new());
        lines.push(fmt_line(&cols));
        lines.push(fmt_line(&widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>()));
        for r in &cells {
            lines.push(fmt_line(r));
        }
    }
    if !report.verdicts.is_empty() {
        lines.push(String::new());
    }
    for v in &report.verdicts {
        let tag = if v.pass { "PASS" } else { "FAIL" };
        lines.push(format!("{tag} {}: {}", v.claim, v.details));
    }
    let mut out: String = lines.iter().map(|l| l.trim_end().to_string() + "\n").collect();
    if out.is_empty() {
        out.push('\n');
    }
    out
}

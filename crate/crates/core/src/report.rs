//! Run manifests and plain-text tables.
//!
//! CSV output is UTF-8 with `\n` line endings. It starts with `#` comment
//! lines, the first being `# manifest: {json}`, followed by a header row of
//! snake_case column names. Floats are printed with 17 significant digits.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

/// Timestamp used when none is given, so repeated runs are byte-identical.
pub const DEFAULT_TIMESTAMP: &str = "1970-01-01T00:00:00Z";

/// Everything needed to reproduce a run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub tool_version: String,
    pub tolerances: BTreeMap<String, f64>,
    pub timestamp: String,
}

impl RunManifest {
    pub fn new(command: &str, timestamp: &str) -> Self {
        Self {
            command: command.to_string(),
            parameters: BTreeMap::new(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            tolerances: BTreeMap::new(),
            timestamp: timestamp.to_string(),
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn tolerance(mut self, key: &str, value: f64) -> Self {
        self.tolerances.insert(key.to_string(), value);
        self
    }

    /// `# manifest: {...}` on one line.
    pub fn header_line(&self) -> String {
        let json = serde_json::to_string(self).expect("manifest serializes");
        format!("# manifest: {json}")
    }
}

/// 17 significant digits; `nan`/`inf`/`-inf` for non-finite values.
pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.16e}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Table,
    Csv,
}

/// Column names, rows of preformatted cells and free-form notes.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// Extra `# key: value` lines printed after the manifest.
    pub notes: Vec<(String, String)>,
}

impl Table {
    pub fn new<S: AsRef<str>>(columns: &[S]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.as_ref().to_string()).collect(),
            ..Self::default()
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn note(&mut self, key: &str, value: impl ToString) {
        self.notes.push((key.to_string(), value.to_string()));
    }

    pub fn render(&self, format: Format, manifest: &RunManifest) -> String {
        match format {
            Format::Csv => self.to_csv(manifest),
            Format::Table => self.to_text(),
        }
    }

    pub fn to_csv(&self, manifest: &RunManifest) -> String {
        let mut out = manifest.header_line();
        out.push('\n');
        for (k, v) in &self.notes {
            let _ = writeln!(out, "# {k}: {v}");
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    /// Space-aligned columns for reading in a terminal.
    pub fn to_text(&self) -> String {
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.chars().count()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c:<w$}"))
                .collect();
            padded.join("  ").trim_end().to_string()
        };
        let mut out = String::new();
        for (k, v) in &self.notes {
            let _ = writeln!(out, "{k}: {v}");
        }
        if !self.notes.is_empty() {
            out.push('\n');
        }
        out.push_str(&line(&self.columns));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&line(row));
            out.push('\n');
        }
        out
    }
}

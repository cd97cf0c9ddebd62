//! CSV emission: `#`-prefixed provenance lines, one header row, numeric rows
//! at 15 significant digits. Output is bitwise reproducible for a given
//! config; no timestamps or machine identifiers go into the file.

use std::io::Write;
use std::path::Path;

use crate::error::Result;

#[derive(Debug, Clone, Default)]
pub struct CsvTable {
    pub provenance: Vec<String>,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl CsvTable {
    pub fn new(headers: &[&str]) -> Self {
        Self {
            provenance: vec![format!("generated by gradient-echo v{}", env!("CARGO_PKG_VERSION"))],
            headers: headers.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.provenance.push(line.into());
    }

    pub fn push_row(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.headers.len(), "ragged CSV row");
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for line in &self.provenance {
            out.push_str("# ");
            out.push_str(line);
            out.push('\n');
        }
        out.push_str(&self.headers.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format_value(*v)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn write_to(&self, path: &Path) -> Result<()> {
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent)?;
        }
        let mut f = std::fs::File::create(path)?;
        f.write_all(self.render().as_bytes())?;
        Ok(())
    }
}

/// 15 significant digits, plain decimal point.
pub fn format_value(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    format!("{v:.14e}")
}

//! Result records and their CSV / JSON renderings.
//!
//! CSV bodies carry `#`-prefixed metadata comments followed by a header row
//! and data rows. Nothing time- or path-dependent is ever written, so a rerun
//! with the same config and seed is byte-identical.

use std::fmt::Write as _;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone)]
pub struct ResultRecord {
    pub command: &'static str,
    pub meta: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl ResultRecord {
    pub fn new(command: &'static str, columns: &[&str]) -> Self {
        Self {
            command,
            meta: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn meta(&mut self, key: &str, value: impl Into<String>) {
        self.meta.push((key.to_string(), value.into()));
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# tool: gibbsmix {TOOL_VERSION}");
        let _ = writeln!(out, "# command: {}", self.command);
        for (key, value) in &self.meta {
            let _ = writeln!(out, "# {key}: {value}");
        }
        let _ = writeln!(out, "{}", self.columns.join(","));
        for row in &self.rows {
            let _ = writeln!(out, "{}", row.join(","));
        }
        out
    }

    pub fn to_json(&self) -> String {
        // meta as an array of [key, value] pairs: keys repeat (the config echo
        // uses one `cfg` entry per line) and order matters
        let meta: Vec<serde_json::Value> = self
            .meta
            .iter()
            .map(|(k, v)| serde_json::json!([k, v]))
            .collect();
        let value = serde_json::json!({
            "tool": format!("gibbsmix {TOOL_VERSION}"),
            "command": self.command,
            "meta": meta,
            "columns": self.columns,
            "rows": self.rows,
        });
        let mut text = serde_json::to_string_pretty(&value).expect("serializable record");
        text.push('\n');
        text
    }
}

/// Shortest round-trip decimal for moderate magnitudes, scientific otherwise.
pub fn fmt_num(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let magnitude = v.abs();
    if !(1e-4..1e7).contains(&magnitude) && v.is_finite() {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

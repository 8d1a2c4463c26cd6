//! Table emission: one comment header, then CSV or a single JSON object.

use serde_json::{json, Map, Value};
use std::io::{self, Write};

/// A table cell.
#[derive(Clone, Debug)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
}

impl Cell {
    /// Decimal text with 12 significant digits.
    fn text(&self) -> String {
        match self {
            Cell::Num(x) => format_num(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            // round through the printed form so both encodings carry the same number
            Cell::Num(x) => format_num(*x)
                .parse::<f64>()
                .ok()
                .and_then(serde_json::Number::from_f64)
                .map_or(Value::Null, Value::Number),
            Cell::Int(i) => json!(i),
            Cell::Text(s) => json!(s),
        }
    }
}

pub fn format_num(x: f64) -> String {
    if x == 0.0 {
        // no negative zero in tables
        format!("{:.11e}", 0.0)
    } else if x.is_finite() {
        format!("{x:.11e}")
    } else {
        "nan".to_string()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Everything one command emits.
pub struct Report {
    pub command: &'static str,
    /// Configuration echo, in header order.
    pub config: Vec<(&'static str, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    /// Extra lines, written as `# key: value` comments in CSV.
    pub diagnostics: Vec<(String, Value)>,
}

impl Report {
    pub fn new(command: &'static str, config: Vec<(&'static str, String)>, columns: &[&str]) -> Self {
        Report {
            command,
            config,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            diagnostics: Vec::new(),
        }
    }

    pub fn header_line(&self) -> String {
        let mut s = format!("# casimir-harmonic v{}", env!("CARGO_PKG_VERSION"));
        for (k, v) in &self.config {
            s.push_str(&format!(" {k}={v}"));
        }
        s.push_str(&format!(" command={}", self.command));
        s
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => self.write_json(out),
        }
    }

    fn write_csv(&self, out: &mut dyn Write) -> io::Result<()> {
        writeln!(out, "{}", self.header_line())?;
        for (k, v) in &self.diagnostics {
            writeln!(out, "# {k}: {}", serde_json::to_string(v)?)?;
        }
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::text))?;
        }
        w.flush()
    }

    fn write_json(&self, out: &mut dyn Write) -> io::Result<()> {
        let mut config = Map::new();
        config.insert("tool".into(), json!("casimir-harmonic"));
        config.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
        config.insert("command".into(), json!(self.command));
        for (k, v) in &self.config {
            config.insert((*k).into(), json!(v));
        }
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Array(r.iter().map(Cell::json).collect()))
            .collect();
        let diagnostics: Map<String, Value> = self.diagnostics.iter().cloned().collect();
        let doc = json!({
            "config": config,
            "columns": self.columns,
            "rows": rows,
            "diagnostics": diagnostics,
        });
        serde_json::to_writer_pretty(&mut *out, &doc)?;
        writeln!(out)
    }
}

use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::{json, Value};

use crate::args::Format;
use crate::CliError;

pub const SCHEMA: &str = "symbell.report/1";

/// Rows for the csv and text renderings.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

/// One command's result in all three renderings.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: &'static str,
    pub config: Value,
    pub result: Value,
    pub table: Table,
    /// Extra lines after the text table.
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: &'static str, config: Value, result: impl Serialize, table: Table) -> Result<Self, CliError> {
        Ok(Self {
            command,
            config,
            result: serde_json::to_value(result)?,
            table,
            notes: Vec::new(),
        })
    }

    pub fn render(&self, format: Format, timestamp: u64) -> Result<String, CliError> {
        match format {
            Format::Json => {
                let envelope = json!({
                    "schema": SCHEMA,
                    "version": env!("CARGO_PKG_VERSION"),
                    "command": self.command,
                    "config": self.config,
                    "timestamp": timestamp,
                    "result": self.result,
                });
                let mut s = serde_json::to_string_pretty(&envelope)?;
                s.push('\n');
                Ok(s)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.table.header)?;
                for row in &self.table.rows {
                    w.write_record(row)?;
                }
                let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
                Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
            }
            Format::Text => {
                let mut out = text_table(&self.table);
                for note in &self.notes {
                    out.push_str(note);
                    out.push('\n');
                }
                Ok(out)
            }
        }
    }
}

fn text_table(t: &Table) -> String {
    let widths: Vec<usize> = (0..t.header.len())
        .map(|i| {
            t.rows
                .iter()
                .map(|r| r[i].chars().count())
                .chain(std::iter::once(t.header[i].len()))
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        let mut s = padded.join("  ").trim_end().to_string();
        s.push('\n');
        s
    };
    let mut out = line(&t.header);
    for row in &t.rows {
        out.push_str(&line(row));
    }
    out
}

/// Shortest representation that parses back to the same `f64`.
pub fn num(x: f64) -> String {
    format!("{x:?}")
}

pub fn now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_cells_roundtrip() {
        for x in [4.0, 11.313708498984761, 1e-20, -0.1, 98.00000000000001] {
            assert_eq!(num(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn renderings() {
        let mut t = Table::new(&["n", "label"]);
        t.push(vec!["3".into(), "1,3".into()]);
        let r = Report::new("x", json!({}), json!({"a": 1}), t).unwrap();
        assert_eq!(r.render(Format::Csv, 0).unwrap(), "n,label\n3,\"1,3\"\n");
        assert_eq!(r.render(Format::Text, 0).unwrap(), "n  label\n3  1,3\n");
        let v: Value = serde_json::from_str(&r.render(Format::Json, 7).unwrap()).unwrap();
        assert_eq!(v["schema"], SCHEMA);
        assert_eq!(v["timestamp"], 7);
        assert_eq!(v["result"]["a"], 1);
    }
}

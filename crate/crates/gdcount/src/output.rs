use std::io::Write;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::args::Format;
use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Str(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            // shortest round-trip form, exponent only for very small or large values
            Cell::Float(v) => format!("{v:?}"),
            Cell::Str(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            Cell::Float(v) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Str(s) => Value::from(s.as_str()),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Str(v.to_owned())
    }
}

#[derive(Debug, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self { columns: columns.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn json_rows(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|r| {
                    let obj: Map<String, Value> =
                        self.columns.iter().cloned().zip(r.iter().map(Cell::json)).collect();
                    Value::Object(obj)
                })
                .collect(),
        )
    }
}

/// Everything a command produces. CSV carries only the table; JSON carries
/// the table (or the `values` payload) together with config, grid and
/// metadata.
#[derive(Debug)]
pub struct Output {
    pub config: Map<String, Value>,
    pub grid: Option<Vec<(i64, i64)>>,
    pub table: Table,
    /// Replaces `rows` in JSON output when present.
    pub values: Option<Value>,
    pub metadata: Map<String, Value>,
    pub warnings: Vec<String>,
}

#[derive(Serialize)]
struct Document<'a> {
    config: &'a Map<String, Value>,
    grid: Option<Vec<[i64; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rows: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    values: Option<&'a Value>,
    metadata: Map<String, Value>,
}

impl Output {
    pub fn write(&self, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
        match format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(self.columns())?;
                for r in &self.table.rows {
                    w.write_record(r.iter().map(Cell::csv))?;
                }
                w.flush()?;
            }
            Format::Json => {
                let mut metadata = self.metadata.clone();
                metadata.insert("warnings".into(), Value::from(self.warnings.clone()));
                let doc = Document {
                    config: &self.config,
                    grid: self.grid.as_ref().map(|g| g.iter().map(|&(lo, hi)| [lo, hi]).collect()),
                    rows: self.values.is_none().then(|| self.table.json_rows()),
                    values: self.values.as_ref(),
                    metadata,
                };
                serde_json::to_writer_pretty(&mut *out, &doc)?;
                writeln!(out)?;
            }
        }
        Ok(())
    }

    fn columns(&self) -> &[String] {
        &self.table.columns
    }
}

use std::fmt;
use std::fs;
use std::path::Path;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{numerical, Result};

/// One CSV/JSON cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Int(v) => write!(f, "{v}"),
            Cell::Float(v) => write!(f, "{v}"),
            Cell::Text(v) => f.write_str(v),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_owned())
    }
}

/// Named table with a header row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: impl Into<String>, columns: &[&str]) -> Self {
        Self {
            name: name.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    /// Square or rectangular numeric grid with column indices as header.
    pub fn grid(name: impl Into<String>, values: &[Vec<f64>]) -> Self {
        let width = values.first().map_or(0, Vec::len);
        Self {
            name: name.into(),
            columns: (0..width).map(|j| j.to_string()).collect(),
            rows: values.iter().map(|r| r.iter().map(|&v| Cell::Float(v)).collect()).collect(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn check_finite(&self) -> Result<()> {
        for row in &self.rows {
            for cell in row {
                if let Cell::Float(v) = cell {
                    if !v.is_finite() {
                        return Err(numerical(format!("table {} holds non-finite value {v}", self.name)));
                    }
                }
            }
        }
        Ok(())
    }

    /// RFC-4180 CSV with a header row.
    pub fn to_csv(&self) -> Result<Vec<u8>> {
        self.check_finite()?;
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::to_string))?;
        }
        w.into_inner().map_err(|e| e.into_error().into())
    }

    /// Array of objects keyed by column name.
    pub fn to_json(&self) -> Result<Value> {
        self.check_finite()?;
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let obj = self.columns.iter().cloned().zip(row.iter().map(|c| serde_json::to_value(c))).map(|(k, v)| v.map(|v| (k, v)));
                obj.collect::<std::result::Result<serde_json::Map<_, _>, _>>().map(Value::Object)
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Value::Array(rows))
    }
}

/// Output format for tables. Documents are always JSON.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

/// Named JSON document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub name: String,
    pub value: Value,
}

/// Output of an experiment driver.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub name: String,
    pub seed: u64,
    /// Resolved driver configuration.
    pub config: Value,
    pub tables: Vec<Table>,
    pub documents: Vec<Document>,
    /// Wall-clock time of the run. Not serialized so that outputs are reproducible.
    #[serde(skip)]
    pub runtime: Duration,
}

impl ExperimentResult {
    pub fn new(name: impl Into<String>, seed: u64, config: &impl Serialize) -> Result<Self> {
        Ok(Self {
            name: name.into(),
            seed,
            config: serde_json::to_value(config)?,
            tables: Vec::new(),
            documents: Vec::new(),
            runtime: Duration::ZERO,
        })
    }

    pub fn document(&mut self, name: impl Into<String>, value: &impl Serialize) -> Result<()> {
        self.documents.push(Document {
            name: name.into(),
            value: serde_json::to_value(value)?,
        });
        Ok(())
    }

    pub fn find_table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.name == name)
    }

    pub fn find_document(&self, name: &str) -> Option<&Value> {
        self.documents.iter().find(|d| d.name == name).map(|d| &d.value)
    }

    /// File contents keyed by file name: tables in `format`, documents as JSON.
    pub fn render(&self, format: OutputFormat) -> Result<Vec<(String, Vec<u8>)>> {
        let mut files = Vec::new();
        for t in &self.tables {
            let bytes = match format {
                OutputFormat::Csv => t.to_csv()?,
                OutputFormat::Json => pretty(&t.to_json()?)?,
            };
            files.push((format!("{}.{}", t.name, format.extension()), bytes));
        }
        for d in &self.documents {
            if let Some(bad) = first_non_finite(&d.value) {
                return Err(numerical(format!("document {} holds non-finite value {bad}", d.name)));
            }
            files.push((format!("{}.json", d.name), pretty(&d.value)?));
        }
        Ok(files)
    }

    /// Writes [`ExperimentResult::render`] into `dir` and returns the file names.
    pub fn write_files(&self, dir: &Path, format: OutputFormat) -> Result<Vec<String>> {
        let files = self.render(format)?;
        fs::create_dir_all(dir)?;
        let mut names = Vec::with_capacity(files.len());
        for (name, bytes) in files {
            fs::write(dir.join(&name), bytes)?;
            names.push(name);
        }
        Ok(names)
    }
}

/// Pretty JSON with a trailing newline.
pub fn pretty(value: &Value) -> Result<Vec<u8>> {
    let mut out = serde_json::to_vec_pretty(value)?;
    out.push(b'\n');
    Ok(out)
}

// Non-finite floats serialize as null, so documents must not use null otherwise.
fn first_non_finite(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("null".into()),
        Value::Array(a) => a.iter().find_map(first_non_finite),
        Value::Object(o) => o.values().find_map(first_non_finite),
        _ => None,
    }
}

//! Flat output records and their CSV / JSON / table serializations.
//!
//! All three formats render numbers from the same strings: the shortest
//! representation that round-trips the `f64` exactly, zero-padded to at least
//! six significant digits.

use std::fmt::Write as _;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(u64),
    Float(f64),
    Bool(bool),
    Text(String),
    Missing,
}

impl Value {
    fn render(&self) -> String {
        match self {
            Value::Int(v) => v.to_string(),
            Value::Float(v) => format_float(*v),
            Value::Bool(v) => v.to_string(),
            Value::Text(s) => s.clone(),
            Value::Missing => String::new(),
        }
    }
}

impl From<u64> for Value {
    fn from(v: u64) -> Self {
        Value::Int(v)
    }
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        if v.is_finite() {
            Value::Float(v)
        } else {
            Value::Missing
        }
    }
}

impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::Bool(v)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Text(v.to_string())
    }
}

impl From<String> for Value {
    fn from(v: String) -> Self {
        Value::Text(v)
    }
}

/// Shortest round-trip decimal form, padded to six significant digits.
pub fn format_float(v: f64) -> String {
    let mut s = format!("{v}");
    let significant = s
        .chars()
        .filter(|c| c.is_ascii_digit())
        .skip_while(|&c| c == '0')
        .count();
    let significant = if v == 0.0 { 1 } else { significant };
    if significant < 6 {
        if !s.contains('.') {
            s.push('.');
        }
        s.extend(std::iter::repeat_n('0', 6 - significant));
    }
    s
}

/// An ordered list of named fields.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Record {
    fields: Vec<(&'static str, Value)>,
}

impl Record {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &'static str, value: impl Into<Value>) -> Self {
        self.fields.push((key, value.into()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.fields.iter().find(|(k, _)| *k == key).map(|(_, v)| v)
    }

    pub fn keys(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.fields.iter().map(|(k, _)| *k)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    Csv,
    Json,
    #[default]
    Table,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "table" => Ok(Format::Table),
            other => Err(format!(
                "unknown format `{other}` (expected csv, json or table)"
            )),
        }
    }
}

pub fn render(records: &[Record], format: Format) -> String {
    match format {
        Format::Csv => to_csv(records),
        Format::Json => to_json(records),
        Format::Table => to_table(records),
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Header row from the first record, then one line per record.
pub fn to_csv(records: &[Record]) -> String {
    let mut out = String::new();
    let Some(first) = records.first() else {
        return out;
    };
    out.push_str(&first.keys().collect::<Vec<_>>().join(","));
    out.push('\n');
    for r in records {
        let row: Vec<String> = r
            .fields
            .iter()
            .map(|(_, v)| csv_escape(&v.render()))
            .collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// A JSON array of flat objects.
pub fn to_json(records: &[Record]) -> String {
    let mut out = String::from("[");
    for (i, r) in records.iter().enumerate() {
        out.push_str(if i == 0 { "\n  {" } else { ",\n  {" });
        for (j, (k, v)) in r.fields.iter().enumerate() {
            if j > 0 {
                out.push_str(", ");
            }
            let value = match v {
                Value::Int(_) | Value::Float(_) | Value::Bool(_) => v.render(),
                Value::Text(s) => serde_json::to_string(s).expect("string serializes"),
                Value::Missing => "null".to_string(),
            };
            let _ = write!(out, "\"{k}\": {value}");
        }
        out.push('}');
    }
    out.push_str(if records.is_empty() { "]\n" } else { "\n]\n" });
    out
}

/// Space-aligned columns for reading at a terminal.
pub fn to_table(records: &[Record]) -> String {
    let Some(first) = records.first() else {
        return String::new();
    };
    let header: Vec<&str> = first.keys().collect();
    let rows: Vec<Vec<String>> = records
        .iter()
        .map(|r| {
            r.fields
                .iter()
                .map(|(_, v)| match v {
                    Value::Missing => "-".to_string(),
                    other => other.render(),
                })
                .collect()
        })
        .collect();
    let widths: Vec<usize> = (0..header.len())
        .map(|i| {
            rows.iter()
                .map(|r| r.get(i).map_or(0, String::len))
                .chain(std::iter::once(header[i].len()))
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    let line = |cells: Vec<&str>, out: &mut String| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        out.push_str(padded.join("  ").trim_end());
        out.push('\n');
    };
    line(header.clone(), &mut out);
    for r in &rows {
        line(r.iter().map(String::as_str).collect(), &mut out);
    }
    out
}

//! Tables and documents rendered as CSV or JSON with fixed numeric formatting.

use std::io::{self, Write};

use serde::Serialize;
use serde_json::{Map, Value};

pub const MIN_PRECISION: usize = 6;
pub const MAX_PRECISION: usize = 17;
pub const DEFAULT_PRECISION: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Output kind and significant digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OutputFormat {
    pub kind: Format,
    pub precision: usize,
}

impl OutputFormat {
    pub fn new(kind: Format, precision: usize) -> Result<Self, String> {
        if !(MIN_PRECISION..=MAX_PRECISION).contains(&precision) {
            return Err(format!(
                "precision must lie in [{MIN_PRECISION}, {MAX_PRECISION}], got {precision}"
            ));
        }
        Ok(Self { kind, precision })
    }

    /// Scientific notation with `precision` significant digits.
    pub fn number(&self, v: f64) -> String {
        if v.is_nan() {
            "nan".into()
        } else if v.is_infinite() {
            if v > 0.0 {
                "inf".into()
            } else {
                "-inf".into()
            }
        } else {
            format!("{:.*e}", self.precision - 1, v)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Num(f64),
    Text(String),
}

/// Named columns plus `#` metadata.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub meta: Vec<(String, Value)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self {
            columns: columns.into_iter().map(Into::into).collect(),
            ..Self::default()
        }
    }

    pub fn meta(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).unwrap_or(Value::Null);
        self.meta.push((key.into(), v));
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write(&self, fmt: &OutputFormat, out: &mut dyn Write) -> io::Result<()> {
        match fmt.kind {
            Format::Csv => self.write_csv(fmt, out),
            Format::Json => {
                let data = self
                    .rows
                    .iter()
                    .map(|row| {
                        let obj = self
                            .columns
                            .iter()
                            .zip(row)
                            .map(|(c, cell)| {
                                let v = match cell {
                                    Cell::Int(i) => Value::from(*i),
                                    Cell::Num(x) => serde_json::Number::from_f64(*x)
                                        .map_or(Value::Null, Value::Number),
                                    Cell::Text(s) => Value::String(s.clone()),
                                };
                                (c.clone(), v)
                            })
                            .collect::<Map<_, _>>();
                        Value::Object(obj)
                    })
                    .collect();
                write_document(&self.meta, &Value::Array(data), fmt, out)
            }
        }
    }

    fn write_csv(&self, fmt: &OutputFormat, out: &mut dyn Write) -> io::Result<()> {
        for (k, v) in &self.meta {
            let mut s = String::new();
            render(v, fmt, &mut s);
            writeln!(out, "# {k}: {s}")?;
        }
        writeln!(out, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Int(i) => i.to_string(),
                    Cell::Num(x) => fmt.number(*x),
                    Cell::Text(s) => s.clone(),
                })
                .collect();
            writeln!(out, "{}", cells.join(","))?;
        }
        Ok(())
    }
}

/// `{"meta": ..., "data": ...}` on one line per document, floats in scientific notation.
pub fn write_document(
    meta: &[(String, Value)],
    data: &Value,
    fmt: &OutputFormat,
    out: &mut dyn Write,
) -> io::Result<()> {
    let meta = Value::Object(meta.iter().cloned().collect());
    let mut s = String::from("{\"meta\":");
    render(&meta, fmt, &mut s);
    s.push_str(",\"data\":");
    render(data, fmt, &mut s);
    s.push('}');
    writeln!(out, "{s}")
}

fn render(v: &Value, fmt: &OutputFormat, s: &mut String) {
    match v {
        Value::Null => s.push_str("null"),
        Value::Bool(b) => s.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if n.is_f64() {
                // `number` never yields nan/inf here: serde_json rejects them
                s.push_str(&fmt.number(n.as_f64().unwrap_or(0.0)));
            } else {
                s.push_str(&n.to_string());
            }
        }
        Value::String(t) => s.push_str(&Value::String(t.clone()).to_string()),
        Value::Array(items) => {
            s.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                render(item, fmt, s);
            }
            s.push(']');
        }
        Value::Object(map) => {
            s.push('{');
            for (i, (k, item)) in map.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                s.push_str(&Value::String(k.clone()).to_string());
                s.push(':');
                render(item, fmt, s);
            }
            s.push('}');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fmt(kind: Format) -> OutputFormat {
        OutputFormat::new(kind, 6).unwrap()
    }

    #[test]
    fn precision_bounds() {
        assert!(OutputFormat::new(Format::Csv, 5).is_err());
        assert!(OutputFormat::new(Format::Csv, 18).is_err());
        assert!(OutputFormat::new(Format::Csv, 17).is_ok());
    }

    #[test]
    fn scientific_numbers() {
        let f = fmt(Format::Csv);
        assert_eq!(f.number(-0.0125), "-1.25000e-2");
        assert_eq!(f.number(3.0), "3.00000e0");
        assert_eq!(f.number(f64::NAN), "nan");
    }

    #[test]
    fn csv_layout() {
        let mut t = Table::new(["n", "x"]);
        t.meta("v1", -1.0);
        t.push(vec![Cell::Int(1), Cell::Num(0.5)]);
        let mut buf = Vec::new();
        t.write(&fmt(Format::Csv), &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "# v1: -1.00000e0\nn,x\n1,5.00000e-1\n"
        );
    }

    #[test]
    fn json_is_parseable() {
        let mut t = Table::new(["n", "x"]);
        t.meta("label", "a\"b");
        t.push(vec![Cell::Int(2), Cell::Num(f64::NAN)]);
        t.push(vec![Cell::Int(3), Cell::Num(1e-300)]);
        let mut buf = Vec::new();
        t.write(&fmt(Format::Json), &mut buf).unwrap();
        let v: Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["meta"]["label"], "a\"b");
        assert!(v["data"][0]["x"].is_null());
        assert_eq!(v["data"][1]["x"].as_f64(), Some(1e-300));
    }
}

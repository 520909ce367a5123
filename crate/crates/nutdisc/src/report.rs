//! Tabular experiment output with lossless rendering.
//!
//! Exact rationals travel as `p/q` strings; drivers add decimal columns
//! where a quick numeric read is useful. Emission is byte-stable: the same
//! report always serializes to the same bytes.

use std::fmt;
use std::io::{self, Write};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;

/// One table cell.
#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    UInt(u64),
    Int(i64),
    Big(BigUint),
    Rat(BigRational),
    Float(f64),
    Bool(bool),
    Text(String),
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::UInt(v) => write!(f, "{v}"),
            Cell::Int(v) => write!(f, "{v}"),
            Cell::Big(v) => write!(f, "{v}"),
            Cell::Rat(v) => write!(f, "{v}"),
            Cell::Float(v) => write!(f, "{v}"),
            Cell::Bool(v) => write!(f, "{v}"),
            Cell::Text(v) => write!(f, "{v}"),
        }
    }
}

impl Cell {
    fn to_json(&self) -> serde_json::Value {
        match self {
            Cell::UInt(v) => (*v).into(),
            Cell::Int(v) => (*v).into(),
            Cell::Big(v) => v.to_string().into(),
            Cell::Rat(v) => v.to_string().into(),
            Cell::Float(v) => serde_json::Number::from_f64(*v)
                .map(serde_json::Value::Number)
                .unwrap_or(serde_json::Value::Null),
            Cell::Bool(v) => (*v).into(),
            Cell::Text(v) => v.clone().into(),
        }
    }

    pub fn rat_f64(v: &BigRational) -> Cell {
        Cell::Float(v.to_f64().unwrap_or(f64::NAN))
    }
}

/// Report metadata. Kept off the data stream; the CLI prints it to the
/// diagnostic stream so output files stay byte-identical across runs.
#[derive(Clone, Debug, Default)]
pub struct ReportMeta {
    pub title: String,
    pub params: Vec<(String, String)>,
    pub tool_version: &'static str,
    /// Populated by interactive front ends only; never serialized.
    pub generated_unix: Option<u64>,
}

/// Fixed-schema table of experiment rows.
#[derive(Clone, Debug)]
pub struct ExperimentReport {
    columns: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
    pub meta: ReportMeta,
}

impl ExperimentReport {
    pub fn new(title: &str, columns: Vec<&'static str>) -> Self {
        ExperimentReport {
            columns,
            rows: Vec::new(),
            meta: ReportMeta {
                title: title.to_string(),
                params: Vec::new(),
                tool_version: env!("CARGO_PKG_VERSION"),
                generated_unix: None,
            },
        }
    }

    pub fn with_param(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.meta.params.push((key.to_string(), value.to_string()));
        self
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row arity mismatch");
        self.rows.push(row);
    }

    pub fn columns(&self) -> &[&'static str] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<Cell>] {
        &self.rows
    }

    /// Cell by column name; panics on unknown columns (schemas are fixed).
    pub fn cell(&self, row: usize, column: &str) -> &Cell {
        let idx = self
            .columns
            .iter()
            .position(|c| *c == column)
            .unwrap_or_else(|| panic!("no column {column:?}"));
        &self.rows[row][idx]
    }

    pub fn write_csv<W: Write>(&self, w: &mut W) -> io::Result<()> {
        writeln!(w, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let mut first = true;
            for cell in row {
                if !first {
                    write!(w, ",")?;
                }
                write!(w, "{}", csv_escape(&cell.to_string()))?;
                first = false;
            }
            writeln!(w)?;
        }
        Ok(())
    }

    pub fn write_json<W: Write>(&self, w: &mut W) -> io::Result<()> {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = serde_json::Map::new();
                for (name, cell) in self.columns.iter().zip(row) {
                    obj.insert((*name).to_string(), cell.to_json());
                }
                serde_json::Value::Object(obj)
            })
            .collect();
        serde_json::to_writer_pretty(&mut *w, &rows)?;
        writeln!(w)
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("string write");
        String::from_utf8(buf).expect("csv is utf-8")
    }
}

fn csv_escape(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn sample() -> ExperimentReport {
        let mut r = ExperimentReport::new("sample", vec!["N", "value", "ok"]);
        r.push_row(vec![
            Cell::UInt(21),
            Cell::Rat(BigRational::new(BigInt::from(39), BigInt::from(32))),
            Cell::Bool(true),
        ]);
        r
    }

    #[test]
    fn empty_report_is_header_only() {
        let r = ExperimentReport::new("empty", vec!["a", "b"]);
        assert_eq!(r.to_csv_string(), "a,b\n");
    }

    #[test]
    fn single_row_two_lines() {
        assert_eq!(sample().to_csv_string(), "N,value,ok\n21,39/32,true\n");
    }

    #[test]
    fn emission_is_byte_stable() {
        let a = sample().to_csv_string();
        let b = sample().to_csv_string();
        assert_eq!(a, b);
        let mut ja = Vec::new();
        sample().write_json(&mut ja).unwrap();
        let mut jb = Vec::new();
        sample().write_json(&mut jb).unwrap();
        assert_eq!(ja, jb);
    }

    #[test]
    fn json_shape() {
        let mut buf = Vec::new();
        sample().write_json(&mut buf).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v[0]["N"], 21);
        assert_eq!(v[0]["value"], "39/32");
        assert_eq!(v[0]["ok"], true);
    }

    #[test]
    fn csv_fields_are_quoted_when_needed() {
        let mut r = ExperimentReport::new("q", vec!["a"]);
        r.push_row(vec![Cell::Text("x,y \"z\"".into())]);
        assert_eq!(r.to_csv_string(), "a\n\"x,y \"\"z\"\"\"\n");
    }

    #[test]
    fn non_finite_floats_serialize_deterministically() {
        let mut r = ExperimentReport::new("nan", vec!["v"]);
        r.push_row(vec![Cell::Float(f64::NAN)]);
        assert_eq!(r.to_csv_string(), "v\nNaN\n");
        let mut buf = Vec::new();
        r.write_json(&mut buf).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert!(v[0]["v"].is_null());
    }
}

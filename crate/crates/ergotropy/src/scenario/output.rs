//! Deterministic scenario output: CSV for tables, JSON for reports, both
//! with floats at 17 significant digits so every value round-trips.

use serde::Serialize;

use crate::error::{Error, Result};

/// `{:.16e}` prints one leading digit plus sixteen fractional digits: the 17
/// significant digits that make an `f64` round-trip exactly.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// JSON formatter writing floats through [`fmt_f64`].
struct SciFormatter;

impl serde_json::ser::Formatter for SciFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        writer.write_all(fmt_f64(value).as_bytes())
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        writer.write_all(fmt_f64(value as f64).as_bytes())
    }
}

/// Serialize any report to a JSON string (compact, trailing newline).
pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SciFormatter);
    value
        .serialize(&mut ser)
        .map_err(|e| Error::Domain(format!("serialization failed: {e}")))?;
    out.push(b'\n');
    String::from_utf8(out).map_err(|e| Error::Domain(format!("non-utf8 output: {e}")))
}

/// One table cell.
#[derive(Debug, Clone)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => fmt_f64(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<i64> for Cell {
    fn from(i: i64) -> Self {
        Cell::Int(i)
    }
}

/// Sweep output: named columns, one row per grid point. Column names carry
/// the conventional symbols of the quantities they hold.
#[derive(Debug, Clone)]
pub struct Table {
    pub kind: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        #[derive(Serialize)]
        struct TableJson<'a> {
            kind: &'a str,
            columns: &'a [&'a str],
            rows: Vec<Vec<serde_json::Value>>,
        }
        let rows = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|cell| match cell {
                        Cell::Num(x) => serde_json::json!(x),
                        Cell::Int(i) => serde_json::json!(i),
                        Cell::Text(s) => serde_json::json!(s),
                    })
                    .collect()
            })
            .collect();
        to_json_string(&TableJson {
            kind: self.kind,
            columns: &self.columns,
            rows,
        })
    }
}

/// Flatten a report into `header,row` CSV: scalar leaves become columns with
/// dotted paths, in the (deterministic) alphabetical order of the JSON tree.
pub fn report_to_csv<T: Serialize>(value: &T) -> Result<String> {
    let tree = serde_json::to_value(value)
        .map_err(|e| Error::Domain(format!("serialization failed: {e}")))?;
    let mut cells: Vec<(String, String)> = Vec::new();
    flatten("", &tree, &mut cells);
    let header: Vec<&str> = cells.iter().map(|(k, _)| k.as_str()).collect();
    let row: Vec<&str> = cells.iter().map(|(_, v)| v.as_str()).collect();
    Ok(format!("{}\n{}\n", header.join(","), row.join(",")))
}

fn flatten(prefix: &str, value: &serde_json::Value, out: &mut Vec<(String, String)>) {
    let path = |key: &str| {
        if prefix.is_empty() {
            key.to_string()
        } else {
            format!("{prefix}.{key}")
        }
    };
    match value {
        serde_json::Value::Object(map) => {
            for (k, v) in map {
                flatten(&path(k), v, out);
            }
        }
        serde_json::Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&path(&i.to_string()), v, out);
            }
        }
        serde_json::Value::Number(n) => {
            let rendered = if let Some(x) = n.as_i64() {
                x.to_string()
            } else {
                fmt_f64(n.as_f64().unwrap_or(f64::NAN))
            };
            out.push((prefix.to_string(), rendered));
        }
        serde_json::Value::Bool(b) => out.push((prefix.to_string(), b.to_string())),
        serde_json::Value::String(s) => out.push((prefix.to_string(), s.clone())),
        serde_json::Value::Null => out.push((prefix.to_string(), String::new())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip_through_formatting() {
        for x in [
            0.0,
            0.1,
            2.0 / 3.0,
            std::f64::consts::LN_2,
            1.0e-300,
            -123.456e17,
            0.2828427124746190,
        ] {
            let s = fmt_f64(x);
            let back: f64 = s.parse().unwrap();
            assert_eq!(x.to_bits(), back.to_bits(), "{x} -> {s} -> {back}");
        }
    }

    #[test]
    fn json_floats_use_scientific_form() {
        #[derive(Serialize)]
        struct S {
            a: f64,
        }
        let s = to_json_string(&S { a: 0.5 }).unwrap();
        assert_eq!(s, "{\"a\":5.0000000000000000e-1}\n");
    }

    #[test]
    fn csv_layout() {
        let mut t = Table {
            kind: "demo",
            columns: vec!["x", "y"],
            rows: vec![],
        };
        t.push(vec![Cell::Num(1.0), Cell::Int(3)]);
        let csv = t.to_csv();
        assert_eq!(csv, "x,y\n1.0000000000000000e0,3\n");
    }

    #[test]
    fn report_flattening() {
        #[derive(Serialize)]
        struct Inner {
            b: f64,
        }
        #[derive(Serialize)]
        struct R {
            a: i64,
            inner: Inner,
            tags: Vec<f64>,
        }
        let csv = report_to_csv(&R {
            a: 2,
            inner: Inner { b: 0.25 },
            tags: vec![1.0],
        })
        .unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "a,inner.b,tags.0");
        assert_eq!(
            lines.next().unwrap(),
            "2,2.5000000000000000e-1,1.0000000000000000e0"
        );
    }
}

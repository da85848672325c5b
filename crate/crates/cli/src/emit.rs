//! CSV and JSON serialization of result tables.

use serde_json::{Map, Number, Value};

use crate::config::{Format, RunConfig};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Bool(bool),
    Text(String),
    /// Empty in CSV, `null` in JSON.
    Missing,
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<Option<String>> for Cell {
    fn from(s: Option<String>) -> Self {
        s.map_or(Cell::Missing, Cell::Text)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self { columns: columns.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// `x` with `digits` significant digits, shortest form: positional for
/// exponents in `[-5, digits)`, otherwise `d.ddde[-]x`. Trailing zeros are
/// dropped. Non-finite values print as `nan`, `inf`, `-inf`.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if mantissa.starts_with('-') { "-" } else { "" };
    let ds: String = mantissa.chars().filter(char::is_ascii_digit).collect();

    let trim = |s: String| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    };

    if exp < -5 || exp >= digits as i32 {
        let m = trim(format!("{}.{}", &ds[..1], &ds[1..]));
        format!("{sign}{m}e{exp}")
    } else if exp >= 0 {
        let split = exp as usize + 1;
        let body = trim(format!("{}.{}", &ds[..split], &ds[split..]));
        format!("{sign}{body}")
    } else {
        let zeros = "0".repeat((-exp - 1) as usize);
        let body = trim(format!("0.{zeros}{ds}"));
        format!("{sign}{body}")
    }
}

fn csv_field(c: &Cell, digits: usize) -> String {
    match c {
        Cell::Num(x) if x.is_nan() => String::new(),
        Cell::Num(x) => format_sig(*x, digits),
        Cell::Int(i) => i.to_string(),
        Cell::Bool(b) => b.to_string(),
        Cell::Text(s) => s.clone(),
        Cell::Missing => String::new(),
    }
}

fn json_value(c: &Cell, digits: usize) -> Value {
    match c {
        Cell::Num(x) => {
            // Round through the printed form so JSON and CSV agree digit for digit.
            let rounded: f64 = format_sig(*x, digits).parse().unwrap_or(f64::NAN);
            Number::from_f64(rounded).map_or(Value::Null, Value::Number)
        }
        Cell::Int(i) => Value::from(*i),
        Cell::Bool(b) => Value::Bool(*b),
        Cell::Text(s) => Value::String(s.clone()),
        Cell::Missing => Value::Null,
    }
}

pub fn to_csv(table: &Table, digits: usize) -> Vec<u8> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(&table.columns).expect("writing to memory");
    for row in &table.rows {
        w.write_record(row.iter().map(|c| csv_field(c, digits))).expect("writing to memory");
    }
    w.into_inner().expect("writing to memory")
}

pub fn to_json(table: &Table, config: &RunConfig) -> Vec<u8> {
    let mut meta = Map::new();
    meta.insert("tool".into(), Value::from("triwell"));
    meta.insert("version".into(), Value::from(env!("CARGO_PKG_VERSION")));
    meta.insert("command".into(), Value::from(config.command.name()));
    meta.insert(
        "params".into(),
        Value::Object(config.echo.iter().map(|(k, v)| (k.clone(), Value::from(v.as_str()))).collect()),
    );
    meta.insert("columns".into(), Value::from(table.columns.clone()));

    let rows: Vec<Value> = table
        .rows
        .iter()
        .map(|row| {
            Value::Object(
                table
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(k, c)| (k.to_string(), json_value(c, config.precision)))
                    .collect(),
            )
        })
        .collect();

    let mut root = Map::new();
    root.insert("meta".into(), Value::Object(meta));
    root.insert("rows".into(), Value::Array(rows));
    let mut out = serde_json::to_vec_pretty(&Value::Object(root)).expect("serializable");
    out.push(b'\n');
    out
}

/// Serialized bytes for `table` in the configured format.
pub fn emit(table: &Table, config: &RunConfig) -> Vec<u8> {
    match config.format {
        Format::Csv => to_csv(table, config.precision),
        Format::Json => to_json(table, config),
    }
}

//! Deterministic number formatting and the CSV/JSON emitters.
//!
//! Every float is printed with 15 significant digits and a `.` decimal
//! separator, so identical invocations produce byte-identical output.

use serde::Serialize;

/// 15-significant-digit formatting (the shape of `printf "%.15g"`).
pub fn fmt15(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let e = format!("{:.14e}", v);
    // Rust renders exponents without a fixed width: "1.23e4" / "1.23e-4".
    let (mantissa, exp) = e.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("valid exponent");
    if !(-5..15).contains(&exp) {
        // Keep scientific notation, trimming trailing zeros of the mantissa.
        let m = mantissa.trim_end_matches('0').trim_end_matches('.');
        return format!("{m}e{exp}");
    }
    // Expand into plain decimal.
    let neg = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let point = 1 + exp; // digits before the decimal point
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if point <= 0 {
        out.push_str("0.");
        for _ in 0..-point {
            out.push('0');
        }
        out.push_str(digits.trim_end_matches('0'));
        if out.ends_with('.') {
            out.pop();
        }
    } else if (point as usize) >= digits.len() {
        out.push_str(&digits);
        for _ in 0..(point as usize - digits.len()) {
            out.push('0');
        }
    } else {
        out.push_str(&digits[..point as usize]);
        let frac = digits[point as usize..].trim_end_matches('0');
        if !frac.is_empty() {
            out.push('.');
            out.push_str(frac);
        }
    }
    if out.is_empty() || out == "-" {
        out.push('0');
    }
    out
}

/// Output selector for record-shaped results.
#[derive(Clone, Copy, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// A table of records: fixed column names plus rows of preformatted cells.
pub struct Table {
    pub columns: &'static [&'static str],
    pub rows: Vec<Vec<String>>,
}

impl Table {
    /// CSV with a header row, or a single JSON array of objects whose keys
    /// are the column names. Numeric-looking cells are emitted as JSON
    /// numbers, the rest as strings.
    pub fn emit(&self, format: Format) -> String {
        match format {
            Format::Csv => {
                let mut out = String::new();
                out.push_str(&self.columns.join(","));
                out.push('\n');
                for row in &self.rows {
                    let quoted: Vec<String> = row.iter().map(|c| csv_cell(c)).collect();
                    out.push_str(&quoted.join(","));
                    out.push('\n');
                }
                out
            }
            Format::Json => {
                let objs: Vec<serde_json::Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let mut obj = serde_json::Map::new();
                        for (name, cell) in self.columns.iter().zip(row) {
                            obj.insert(name.to_string(), cell_value(cell));
                        }
                        serde_json::Value::Object(obj)
                    })
                    .collect();
                let mut s = serde_json::to_string_pretty(&objs).expect("serializable");
                s.push('\n');
                s
            }
        }
    }
}

/// RFC 4180 quoting for cells containing separators or quotes.
fn csv_cell(cell: &str) -> String {
    if cell.contains([',', '"', '\n']) {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell.to_string()
    }
}

fn cell_value(cell: &str) -> serde_json::Value {
    // Integers that fit u128/i128 and floats both round-trip; anything
    // else stays a string. serde_json::Number keeps arbitrary precision
    // integers out, so big counts above u64 fall back to strings.
    if let Ok(v) = cell.parse::<u64>() {
        return serde_json::Value::from(v);
    }
    if let Ok(v) = cell.parse::<i64>() {
        return serde_json::Value::from(v);
    }
    if cell.parse::<f64>().is_ok() && cell.chars().any(|c| c == '.' || c == 'e') {
        if let Some(n) = serde_json::Number::from_f64(cell.parse().unwrap()) {
            return serde_json::Value::Number(n);
        }
    }
    serde_json::Value::String(cell.to_string())
}

/// One-document JSON emit for non-tabular payloads.
pub fn emit_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

//! Row-oriented emission in three formats. Every command funnels its
//! results through one table, which keeps output byte-deterministic.

use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

/// Prints `rows` under `headers` in the chosen format. Table output is
/// left-aligned with two-space gutters; CSV quotes nothing (no cell
/// produced by this binary contains a comma); JSON is an array of
/// objects with every value as a string, preserving full precision.
pub fn emit(format: Format, headers: &[&str], rows: &[Vec<String>]) {
    match format {
        Format::Table => {
            let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
            for row in rows {
                for (i, cell) in row.iter().enumerate() {
                    widths[i] = widths[i].max(cell.chars().count());
                }
            }
            let line = |cells: Vec<&str>| {
                let mut out = String::new();
                for (i, cell) in cells.iter().enumerate() {
                    if i > 0 {
                        out.push_str("  ");
                    }
                    out.push_str(cell);
                    if i + 1 < cells.len() {
                        for _ in cell.chars().count()..widths[i] {
                            out.push(' ');
                        }
                    }
                }
                out
            };
            println!("{}", line(headers.to_vec()));
            for row in rows {
                println!("{}", line(row.iter().map(String::as_str).collect()));
            }
        }
        Format::Csv => {
            println!("{}", headers.join(","));
            for row in rows {
                println!("{}", row.join(","));
            }
        }
        Format::Json => {
            let array: Vec<Value> = rows
                .iter()
                .map(|row| {
                    let mut obj = Map::new();
                    for (h, cell) in headers.iter().zip(row) {
                        obj.insert((*h).to_string(), Value::String(cell.clone()));
                    }
                    Value::Object(obj)
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&Value::Array(array)).unwrap());
        }
    }
}

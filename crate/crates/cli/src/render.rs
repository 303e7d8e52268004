use clap::ValueEnum;
use fthresh_core::rational;
use serde_json::{Map, Value};

use crate::{usage, Outcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

/// A report plus, for tabular reports, the array field and its column order.
pub struct Output {
    value: Value,
    rows: Option<(&'static str, Vec<&'static str>)>,
}

impl Output {
    pub fn plain(value: Value) -> Self {
        Output { value, rows: None }
    }

    pub fn rows(value: Value, field: &'static str, columns: &[&'static str]) -> Self {
        Output {
            value,
            rows: Some((field, columns.to_vec())),
        }
    }

    pub fn render(mut self, format: Format, decimal: Option<usize>) -> Outcome<String> {
        if let Some(k) = decimal {
            add_decimals(&mut self.value, k);
        }
        match format {
            Format::Json => Ok(format!("{}\n", self.value)),
            Format::Csv => {
                let Some((field, cols)) = &self.rows else {
                    return usage("csv output is only available for tabular reports");
                };
                let rows = row_list(&self.value, field);
                let cols = with_decimal_columns(cols, rows);
                let mut out = cols.join(",");
                out.push('\n');
                for r in rows {
                    let line: Vec<String> = cols.iter().map(|c| csv_cell(&cell(r, c))).collect();
                    out.push_str(&line.join(","));
                    out.push('\n');
                }
                Ok(out)
            }
            Format::Table => Ok(self.table()),
        }
    }

    fn table(&self) -> String {
        let mut out = String::new();
        let field = self.rows.as_ref().map(|(f, _)| *f);
        if let Value::Object(map) = &self.value {
            for k in map.keys().filter(|k| Some(k.as_str()) != field) {
                out.push_str(&format!("{k}: {}\n", cell(&self.value, k)));
            }
        } else {
            out.push_str(&format!("{}\n", self.value));
        }
        if let Some((field, cols)) = &self.rows {
            let rows = row_list(&self.value, field);
            let cols = with_decimal_columns(cols, rows);
            let grid: Vec<Vec<String>> = rows
                .iter()
                .map(|r| cols.iter().map(|c| cell(r, c)).collect())
                .collect();
            let widths: Vec<usize> = cols
                .iter()
                .enumerate()
                .map(|(j, c)| {
                    grid.iter()
                        .map(|row| row[j].chars().count())
                        .chain(std::iter::once(c.chars().count()))
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let line = |cells: &[String]| -> String {
                let padded: Vec<String> = cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, &w)| format!("{c:<w$}"))
                    .collect();
                format!("{}\n", padded.join("  ").trim_end())
            };
            let header: Vec<String> = cols.iter().map(|c| c.to_string()).collect();
            out.push_str(&line(&header));
            let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
            out.push_str(&line(&rule));
            for row in &grid {
                out.push_str(&line(row));
            }
        }
        out
    }
}

fn row_list<'a>(v: &'a Value, field: &str) -> &'a [Value] {
    v.get(field).and_then(Value::as_array).map(Vec::as_slice).unwrap_or(&[])
}

fn with_decimal_columns(cols: &[&'static str], rows: &[Value]) -> Vec<String> {
    let mut out = Vec::new();
    for c in cols {
        out.push(c.to_string());
        let d = format!("{c}_decimal");
        if rows.first().is_some_and(|r| r.get(&d).is_some()) {
            out.push(d);
        }
    }
    out
}

fn cell(v: &Value, key: &str) -> String {
    match v.get(key) {
        None | Some(Value::Null) => String::new(),
        Some(Value::String(s)) => s.clone(),
        Some(other) => other.to_string(),
    }
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn add_decimals(v: &mut Value, k: usize) {
    match v {
        Value::Object(map) => {
            let extra: Map<String, Value> = map
                .iter()
                .filter_map(|(key, val)| {
                    let s = val.as_str()?;
                    let r = rational::parse(s).ok()?;
                    Some((format!("{key}_decimal"), Value::String(rational::to_decimal(&r, k))))
                })
                .collect();
            for val in map.values_mut() {
                add_decimals(val, k);
            }
            map.extend(extra);
        }
        Value::Array(items) => items.iter_mut().for_each(|x| add_decimals(x, k)),
        _ => {}
    }
}

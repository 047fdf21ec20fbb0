//! Rendering of command results in the three output formats.  Every
//! renderer is deterministic: identical results produce byte-identical
//! streams.

use qpart_core::lattice::LaurentPolyZ;
use serde_json::{json, Map, Value};

/// Version tag placed under the top-level `"schema"` key of every JSON
/// document this binary emits.
pub const SCHEMA: &str = "qpart/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// A structured command result, shared by all renderers.
#[derive(Debug)]
pub enum Output {
    /// A polynomial in `q`, printed in descending powers.
    Poly { poly: LaurentPolyZ },
    /// A rectangular table with row and column labels.
    Table {
        row_name: String,
        columns: Vec<String>,
        rows: Vec<(String, Vec<String>)>,
    },
    /// Labeled values in a fixed order (distributions, map listings).
    Pairs {
        key_name: String,
        value_name: String,
        rows: Vec<(String, String)>,
    },
    /// A key-value record in a fixed order.
    Record { fields: Vec<(String, String)> },
    /// A pre-formatted text body (file formats).
    Blob { body: String },
    /// Named boolean outcomes.
    Checks { rows: Vec<(String, bool)> },
}

pub fn render(command: &str, out: &Output, format: Format) -> String {
    match format {
        Format::Text => render_text(out),
        Format::Json => {
            let mut doc = render_json(out);
            doc.insert("schema".into(), json!(SCHEMA));
            doc.insert("command".into(), json!(command));
            let mut s =
                serde_json::to_string_pretty(&Value::Object(doc)).expect("serializable");
            s.push('\n');
            s
        }
        Format::Csv => render_csv(out),
    }
}

fn render_text(out: &Output) -> String {
    match out {
        Output::Poly { poly } => format!("{poly}\n"),
        Output::Table {
            row_name,
            columns,
            rows,
        } => {
            let mut header = vec![row_name.clone()];
            header.extend(columns.iter().cloned());
            let mut body: Vec<Vec<String>> = vec![header];
            for (label, values) in rows {
                let mut line = vec![label.clone()];
                line.extend(values.iter().cloned());
                body.push(line);
            }
            align_columns(&body)
        }
        Output::Pairs {
            key_name,
            value_name,
            rows,
        } => {
            let mut body: Vec<Vec<String>> = vec![vec![key_name.clone(), value_name.clone()]];
            for (k, v) in rows {
                body.push(vec![k.clone(), v.clone()]);
            }
            align_columns(&body)
        }
        Output::Record { fields } => {
            let mut s = String::new();
            for (k, v) in fields {
                s.push_str(&format!("{k}: {v}\n"));
            }
            s
        }
        Output::Blob { body } => body.clone(),
        Output::Checks { rows } => {
            let mut s = String::new();
            for (name, ok) in rows {
                s.push_str(&format!(
                    "{name}: {}\n",
                    if *ok { "PASS" } else { "FAIL" }
                ));
            }
            s
        }
    }
}

/// Left-aligns the first column and right-aligns the rest, with two
/// spaces between columns.
fn align_columns(body: &[Vec<String>]) -> String {
    let cols = body.iter().map(Vec::len).max().unwrap_or(0);
    let mut widths = vec![0usize; cols];
    for line in body {
        for (i, cell) in line.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut s = String::new();
    for line in body {
        let mut rendered: Vec<String> = Vec::with_capacity(line.len());
        for (i, cell) in line.iter().enumerate() {
            if i == 0 {
                rendered.push(format!("{cell:<width$}", width = widths[0]));
            } else {
                rendered.push(format!("{cell:>width$}", width = widths[i]));
            }
        }
        s.push_str(rendered.join("  ").trim_end());
        s.push('\n');
    }
    s
}

fn render_json(out: &Output) -> Map<String, Value> {
    let mut doc = Map::new();
    match out {
        Output::Poly { poly } => {
            let mut coeffs = Map::new();
            for (e, c) in poly.terms() {
                coeffs.insert(e.to_string(), json!(c.to_string()));
            }
            doc.insert("kind".into(), json!("polynomial"));
            doc.insert("coefficients".into(), Value::Object(coeffs));
            doc.insert("display".into(), json!(poly.to_string()));
        }
        Output::Table {
            row_name,
            columns,
            rows,
        } => {
            doc.insert("kind".into(), json!("table"));
            doc.insert("row_name".into(), json!(row_name));
            doc.insert("columns".into(), json!(columns));
            let rows: Vec<Value> = rows
                .iter()
                .map(|(label, values)| json!({"label": label, "values": values}))
                .collect();
            doc.insert("rows".into(), Value::Array(rows));
        }
        Output::Pairs {
            key_name,
            value_name,
            rows,
        } => {
            doc.insert("kind".into(), json!("pairs"));
            doc.insert("key_name".into(), json!(key_name));
            doc.insert("value_name".into(), json!(value_name));
            let rows: Vec<Value> = rows
                .iter()
                .map(|(k, v)| json!({"key": k, "value": v}))
                .collect();
            doc.insert("rows".into(), Value::Array(rows));
        }
        Output::Record { fields } => {
            doc.insert("kind".into(), json!("record"));
            let mut obj = Map::new();
            for (k, v) in fields {
                obj.insert(k.clone(), json!(v));
            }
            doc.insert("fields".into(), Value::Object(obj));
        }
        Output::Blob { body } => {
            doc.insert("kind".into(), json!("text"));
            doc.insert("text".into(), json!(body));
        }
        Output::Checks { rows } => {
            doc.insert("kind".into(), json!("checks"));
            let rows: Vec<Value> = rows
                .iter()
                .map(|(name, ok)| json!({"name": name, "pass": ok}))
                .collect();
            doc.insert("checks".into(), Value::Array(rows));
        }
    }
    doc
}

fn render_csv(out: &Output) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    match out {
        Output::Poly { poly } => {
            w.write_record(["exponent", "coefficient"]).expect("csv");
            let terms: Vec<_> = poly.terms().collect();
            for (e, c) in terms.into_iter().rev() {
                w.write_record([e.to_string(), c.to_string()]).expect("csv");
            }
        }
        Output::Table {
            row_name,
            columns,
            rows,
        } => {
            let mut header = vec![row_name.clone()];
            header.extend(columns.iter().cloned());
            w.write_record(&header).expect("csv");
            for (label, values) in rows {
                let mut line = vec![label.clone()];
                line.extend(values.iter().cloned());
                w.write_record(&line).expect("csv");
            }
        }
        Output::Pairs {
            key_name,
            value_name,
            rows,
        } => {
            w.write_record([key_name, value_name]).expect("csv");
            for (k, v) in rows {
                w.write_record([k, v]).expect("csv");
            }
        }
        Output::Record { fields } => {
            w.write_record(["field", "value"]).expect("csv");
            for (k, v) in fields {
                w.write_record([k, v]).expect("csv");
            }
        }
        Output::Blob { body } => {
            w.write_record(["line"]).expect("csv");
            for line in body.lines() {
                w.write_record([line]).expect("csv");
            }
        }
        Output::Checks { rows } => {
            w.write_record(["check", "result"]).expect("csv");
            for (name, ok) in rows {
                w.write_record([name.as_str(), if *ok { "PASS" } else { "FAIL" }])
                    .expect("csv");
            }
        }
    }
    String::from_utf8(w.into_inner().expect("csv buffer")).expect("utf-8")
}

//! Machine and human renderings of a command result.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub outputs: BTreeMap<String, Value>,
    pub engine: String,
    pub version: String,
}

impl Report {
    pub fn new(command: &str, engine: &str) -> Self {
        Self {
            command: command.to_string(),
            inputs: BTreeMap::new(),
            outputs: BTreeMap::new(),
            engine: engine.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn input(mut self, key: &str, value: impl ToString) -> Self {
        self.inputs.insert(key.to_string(), value.to_string());
        self
    }

    pub fn output(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.outputs.insert(key.to_string(), value.into());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut scalars: Vec<(String, String)> = vec![
            ("command".into(), self.command.clone()),
            ("engine".into(), self.engine.clone()),
        ];
        scalars.extend(self.inputs.iter().map(|(k, v)| (k.clone(), v.clone())));
        let mut tables = Vec::new();
        for (k, v) in &self.outputs {
            match v {
                Value::Array(rows) if rows.iter().all(Value::is_object) && !rows.is_empty() => tables.push((k, rows)),
                other => scalars.push((k.clone(), plain(other))),
            }
        }
        let width = scalars.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
        for (k, v) in &scalars {
            let _ = writeln!(out, "{k:<width$}  {v}");
        }
        for (name, rows) in tables {
            let _ = writeln!(out, "\n{name}:");
            out.push_str(&table(rows));
        }
        out
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => format!("({})", items.iter().map(plain).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

fn table(rows: &[Value]) -> String {
    let columns: Vec<String> = rows[0]
        .as_object()
        .map(|o| o.keys().cloned().collect())
        .unwrap_or_default();
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            columns
                .iter()
                .map(|c| r.get(c).map(plain).unwrap_or_default())
                .collect()
        })
        .collect();
    let widths: Vec<usize> = columns
        .iter()
        .enumerate()
        .map(|(i, c)| {
            cells
                .iter()
                .map(|row| row[i].chars().count())
                .chain([c.chars().count()])
                .max()
                .unwrap()
        })
        .collect();
    let line = |items: &[String]| {
        let padded: Vec<String> = items
            .iter()
            .zip(&widths)
            .map(|(s, &w)| format!("{s}{}", " ".repeat(w - s.chars().count())))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(&columns);
    for row in &cells {
        out.push_str(&line(row));
    }
    out
}

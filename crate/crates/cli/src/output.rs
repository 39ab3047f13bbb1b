use std::io::Write;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

/// Version of the JSON envelope. Bump on incompatible changes.
pub const SCHEMA: &str = "knotfert-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub argv: Vec<String>,
    pub inputs: Vec<String>,
    pub ceiling: Option<usize>,
    pub jobs: usize,
    pub table: String,
    pub format: Format,
    pub allow_reducible: bool,
    pub reflection_quotient: bool,
    pub include_unknot: bool,
}

/// One command result in all three renderings.
pub struct Report {
    pub json: Value,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub text: Vec<String>,
}

impl Report {
    pub fn new<T: Serialize>(result: &T) -> Self {
        Report {
            json: serde_json::to_value(result).expect("reports serialize"),
            header: Vec::new(),
            rows: Vec::new(),
            text: Vec::new(),
        }
    }

    pub fn header<S: ToString>(mut self, names: &[S]) -> Self {
        self.header = names.iter().map(ToString::to_string).collect();
        self
    }

    pub fn row(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn line(&mut self, line: impl Into<String>) {
        self.text.push(line.into());
    }

    pub fn render(&self, config: &RunConfig) -> Vec<u8> {
        let config_line = serde_json::to_string(config).expect("config serializes");
        match config.format {
            Format::Json => {
                let envelope = serde_json::json!({
                    "schema": SCHEMA,
                    "config": config,
                    "result": self.json,
                });
                let mut out = serde_json::to_vec_pretty(&envelope).expect("json");
                out.push(b'\n');
                out
            }
            Format::Csv => {
                let mut out = format!("# config: {config_line}\n").into_bytes();
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header).expect("csv");
                for row in &self.rows {
                    w.write_record(row).expect("csv");
                }
                out.extend(w.into_inner().expect("csv flush"));
                out
            }
            Format::Text => {
                let mut out = format!("# config: {config_line}\n").into_bytes();
                for line in &self.text {
                    writeln!(out, "{line}").expect("write to vec");
                }
                out
            }
        }
    }
}

pub fn error_json(name: &str, message: &str) -> String {
    serde_json::to_string(&serde_json::json!({ "error": name, "message": message })).expect("json")
}

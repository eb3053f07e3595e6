//! Table and report emission: TSV with a versioned `#` header line, or
//! JSON carrying a `schema_version` field. Floats are printed with 17
//! significant digits so equal runs emit identical bytes.

use clap::ValueEnum;
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
}

/// 17-significant-digit float formatting.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// A rectangular report with named columns.
pub struct Table {
    pub name: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &'static str, columns: Vec<&'static str>) -> Self {
        Table {
            name,
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn emit(&self, format: Format) {
        match format {
            Format::Tsv => {
                println!(
                    "# {} v{} columns: {}",
                    self.name,
                    SCHEMA_VERSION,
                    self.columns.join("\t")
                );
                for row in &self.rows {
                    println!("{}", row.join("\t"));
                }
            }
            Format::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|r| {
                        let mut obj = serde_json::Map::new();
                        for (c, v) in self.columns.iter().zip(r) {
                            obj.insert((*c).to_string(), Value::String(v.clone()));
                        }
                        Value::Object(obj)
                    })
                    .collect();
                let doc = json!({
                    "schema_version": SCHEMA_VERSION,
                    "report": self.name,
                    "rows": rows,
                });
                println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            }
        }
    }
}

/// A flat key-value report.
pub fn emit_keyvals(name: &str, pairs: &[(&str, String)], format: Format) {
    match format {
        Format::Tsv => {
            println!("# {} v{} columns: key\tvalue", name, SCHEMA_VERSION);
            for (k, v) in pairs {
                println!("{k}\t{v}");
            }
        }
        Format::Json => {
            let mut obj = serde_json::Map::new();
            obj.insert(
                "schema_version".into(),
                Value::Number(SCHEMA_VERSION.into()),
            );
            obj.insert("report".into(), Value::String(name.to_string()));
            for (k, v) in pairs {
                obj.insert((*k).to_string(), Value::String(v.clone()));
            }
            println!("{}", serde_json::to_string_pretty(&Value::Object(obj)).unwrap());
        }
    }
}

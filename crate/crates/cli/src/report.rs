//! Versioned report schema and its JSON / text renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;
use w22_core::embedding::Certificate;
use w22_core::verma::{AtypicalityReport, HighestWeightSpec, Typicality};

pub const SCHEMA_VERSION: u32 = 1;

/// Echo of the resolved configuration; rationals stay strings.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Echo {
    pub algebra: Option<String>,
    pub h: Option<String>,
    pub hi: Option<String>,
    pub hw: Option<String>,
    pub cl: String,
    pub cli: String,
    pub levels: u32,
    pub level: Option<u32>,
    pub module: Option<String>,
    pub p: Option<u32>,
    pub suite: Option<String>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub config: Echo,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spec: Option<HighestWeightSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<AtypicalityReport>,
    /// Per-level rows keyed by level.
    pub tables: BTreeMap<u32, BTreeMap<String, Value>>,
    pub vectors: Vec<String>,
    pub certificates: Vec<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<Value>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

impl Report {
    pub fn new(command: &str, config: Echo) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            config,
            spec: None,
            classification: None,
            tables: BTreeMap::new(),
            vectors: Vec::new(),
            certificates: Vec::new(),
            details: None,
            passed: true,
            timing_ms: None,
        }
    }

    pub fn column<T: Serialize>(&mut self, name: &str, values: &[T]) {
        for (lvl, v) in values.iter().enumerate() {
            let v = serde_json::to_value(v).expect("plain values serialize");
            self.tables
                .entry(lvl as u32)
                .or_default()
                .insert(name.to_string(), v);
        }
    }

    pub fn certify(&mut self, name: &str, passed: bool, level: Option<u32>, detail: String) {
        self.passed &= passed;
        self.certificates.push(Certificate {
            name: name.to_string(),
            passed,
            level,
            detail,
        });
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        if let Some(spec) = &self.spec {
            let _ = writeln!(out, "weight: {}", spec.describe());
        }
        if let Some(c) = &self.classification {
            let _ = writeln!(out, "classification: {}", classification_text(c));
        }
        if !self.tables.is_empty() {
            let cols: Vec<String> = {
                let mut c: Vec<String> = self
                    .tables
                    .values()
                    .flat_map(|r| r.keys().cloned())
                    .collect();
                c.sort();
                c.dedup();
                c
            };
            for col in &cols {
                let vals: Vec<String> = self
                    .tables
                    .values()
                    .filter_map(|r| r.get(col))
                    .map(plain)
                    .collect();
                let _ = writeln!(out, "{col}: {}", vals.join(","));
            }
        }
        if let Some(Value::Object(details)) = &self.details {
            for (k, v) in details {
                match v {
                    Value::Array(rows) if rows.iter().all(Value::is_array) && !rows.is_empty() => {
                        let _ = writeln!(out, "{k}:");
                        for row in rows {
                            let cells: Vec<String> =
                                row.as_array().into_iter().flatten().map(plain).collect();
                            let _ = writeln!(out, "  [{}]", cells.join(", "));
                        }
                    }
                    Value::Array(items) => {
                        let cells: Vec<String> = items.iter().map(plain).collect();
                        let _ = writeln!(out, "{k}: {}", cells.join(", "));
                    }
                    other => {
                        let _ = writeln!(out, "{k}: {}", plain(other));
                    }
                }
            }
        }
        if !self.vectors.is_empty() {
            let _ = writeln!(out, "vectors:");
            for v in &self.vectors {
                let _ = writeln!(out, "  {v}");
            }
        }
        for c in &self.certificates {
            let status = if c.passed { "PASS" } else { "FAIL" };
            let _ = write!(out, "{status} {}", c.name);
            if let Some(l) = c.level {
                let _ = write!(out, " (level {l})");
            }
            let _ = if c.detail.is_empty() {
                writeln!(out)
            } else {
                writeln!(out, ": {}", c.detail)
            };
        }
        if let Some(t) = self.timing_ms {
            let _ = writeln!(out, "timing_ms: {t}");
        }
        let _ = writeln!(out, "result: {}", if self.passed { "pass" } else { "fail" });
        out
    }
}

fn classification_text(c: &AtypicalityReport) -> String {
    let mut s = match c.classification {
        Typicality::Typical => "typical".to_string(),
        Typicality::Atypical => "atypical".to_string(),
    };
    if let Some(p) = c.p {
        let _ = write!(s, " p={p}");
    }
    if let Some(r) = c.r {
        let _ = write!(s, " r={r}");
    }
    if let Some(b) = c.branch {
        let _ = write!(
            s,
            " branch={}",
            serde_json::to_value(b)
                .ok()
                .and_then(|v| v.as_str().map(String::from))
                .unwrap_or_default()
        );
    }
    s
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

//! Pass/fail reports written as JSON, and simple CSV tables.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::Result;

/// How a measured value is compared with its threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Compare {
    AtMost,
    AtLeast,
    Below,
    Equal,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub threshold: f64,
    pub compare: Compare,
    pub passed: bool,
    /// The identity or bound being tested.
    pub anchor: String,
}

impl Check {
    pub fn new(name: &str, measured: f64, compare: Compare, threshold: f64, anchor: &str) -> Self {
        let passed = match compare {
            Compare::AtMost => measured <= threshold,
            Compare::AtLeast => measured >= threshold,
            Compare::Below => measured < threshold,
            Compare::Equal => measured == threshold,
        };
        Self {
            name: name.to_string(),
            measured,
            threshold,
            compare,
            passed,
            anchor: anchor.to_string(),
        }
    }

    pub fn at_most(name: &str, measured: f64, threshold: f64, anchor: &str) -> Self {
        Self::new(name, measured, Compare::AtMost, threshold, anchor)
    }

    pub fn at_least(name: &str, measured: f64, threshold: f64, anchor: &str) -> Self {
        Self::new(name, measured, Compare::AtLeast, threshold, anchor)
    }

    pub fn below(name: &str, measured: f64, threshold: f64, anchor: &str) -> Self {
        Self::new(name, measured, Compare::Below, threshold, anchor)
    }

    /// A boolean condition, recorded as 1 (true) against 1.
    pub fn holds(name: &str, ok: bool, anchor: &str) -> Self {
        Self::new(
            name,
            if ok { 1.0 } else { 0.0 },
            Compare::Equal,
            1.0,
            anchor,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub config_hash: String,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub values: BTreeMap<String, Value>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(command: &str, config_hash: &str) -> Self {
        Self {
            command: command.to_string(),
            config_hash: config_hash.to_string(),
            passed: true,
            checks: Vec::new(),
            values: BTreeMap::new(),
            warnings: Vec::new(),
        }
    }

    pub fn push(&mut self, c: Check) {
        self.passed &= c.passed;
        self.checks.push(c);
    }

    pub fn value<T: Serialize>(&mut self, key: &str, v: T) {
        self.values.insert(
            key.to_string(),
            serde_json::to_value(v).unwrap_or(Value::Null),
        );
    }

    pub fn warn(&mut self, msg: String) {
        self.warnings.push(msg);
    }

    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn write_json(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }
}

/// Write a header and rows of numbers in a fixed exponential format.
pub fn write_table(path: &Path, header: &[&str], rows: &[Vec<f64>]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(header)?;
    for r in rows {
        w.write_record(r.iter().map(|x| format!("{x:.12e}")))?;
    }
    w.flush()?;
    Ok(())
}

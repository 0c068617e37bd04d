use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use super::catalog;

pub type Row = Map<String, Value>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Verdict {
    pub claim: String,
    pub pass: bool,
    pub details: String,
}

/// Outcome of one experiment: parameters, result rows and per-claim verdicts.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentReport {
    pub name: String,
    pub params: Map<String, Value>,
    pub rows: Vec<Row>,
    pub verdicts: Vec<Verdict>,
    pub seed: Option<u64>,
    pub version: String,
}

impl ExperimentReport {
    pub fn new(name: &str) -> Self {
        ExperimentReport {
            name: name.to_string(),
            params: Map::new(),
            rows: Vec::new(),
            verdicts: Vec::new(),
            seed: None,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn push_row(&mut self, row: Row) {
        self.rows.push(row);
    }

    /// Records a verdict; `claim` must be a catalog id.
    pub fn verdict(&mut self, claim: &str, pass: bool, details: impl Into<String>) {
        assert!(catalog::claim(claim).is_some(), "unknown claim id {claim}");
        self.verdicts.push(Verdict {
            claim: claim.to_string(),
            pass,
            details: details.into(),
        });
    }

    /// True when every verdict passed.
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn from_json(text: &str) -> crate::Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Builds a row from `(column, value)` pairs, keeping column order.
#[macro_export]
macro_rules! row {
    ($($key:expr => $value:expr),* $(,)?) => {{
        let mut row = $crate::lab::Row::new();
        $(row.insert($key.to_string(), serde_json::Value::from($value));)*
        row
    }};
}

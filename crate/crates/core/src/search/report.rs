use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

/// A weight datum on which a checked statement failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub level: u32,
    pub weights: Vec<u32>,
    pub check: String,
    pub detail: String,
}

/// Weight data excluded from a sweep for one reason, with the first example.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Skip {
    pub reason: String,
    pub count: u64,
    pub example_level: u32,
    pub example_weights: Vec<u32>,
}

/// The JSON report of a verification sweep.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub config: Value,
    pub counts: BTreeMap<String, Value>,
    pub violations: Vec<Violation>,
    pub skipped: Vec<Skip>,
}

impl VerifyReport {
    pub fn new(config: Value) -> Self {
        Self {
            config,
            counts: BTreeMap::new(),
            violations: Vec::new(),
            skipped: Vec::new(),
        }
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn count(&self, key: &str) -> u64 {
        self.counts.get(key).and_then(Value::as_u64).unwrap_or(0)
    }

    pub(crate) fn bump(&mut self, key: &str, by: u64) {
        let cur = self.count(key);
        self.counts.insert(key.to_string(), Value::from(cur + by));
    }

    pub(crate) fn set(&mut self, key: &str, v: impl Into<Value>) {
        self.counts.insert(key.to_string(), v.into());
    }

    pub(crate) fn skip(&mut self, reason: &str, level: u32, weights: &[u32]) {
        self.skip_many(reason, 1, level, weights);
    }

    pub(crate) fn skip_many(&mut self, reason: &str, count: u64, level: u32, weights: &[u32]) {
        if count == 0 {
            return;
        }
        match self.skipped.iter_mut().find(|s| s.reason == reason) {
            Some(s) => s.count += count,
            None => self.skipped.push(Skip {
                reason: reason.to_string(),
                count,
                example_level: level,
                example_weights: weights.to_vec(),
            }),
        }
    }

    pub fn skipped_count(&self, reason: &str) -> u64 {
        self.skipped.iter().find(|s| s.reason == reason).map_or(0, |s| s.count)
    }
}

//! Pass/fail reports shared by the verification routines.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// First failed property together with the lattice vector exhibiting it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub property: String,
    pub witness: Vec<i64>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CheckReport {
    pub passed: bool,
    /// Named counters (roots examined, strings checked, ...).
    pub stats: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<Violation>,
}

impl CheckReport {
    pub fn new() -> Self {
        Self {
            passed: true,
            ..Self::default()
        }
    }

    pub fn count(&mut self, key: &str, by: u64) {
        *self.stats.entry(key.to_string()).or_default() += by;
    }

    pub fn set(&mut self, key: &str, value: u64) {
        self.stats.insert(key.to_string(), value);
    }

    /// Record a failure; only the first one is kept.
    pub fn fail(&mut self, property: &str, witness: &[i64], detail: impl Into<String>) {
        if self.violation.is_none() {
            self.violation = Some(Violation {
                property: property.to_string(),
                witness: witness.to_vec(),
                detail: detail.into(),
            });
        }
        self.passed = false;
    }

    pub fn failed_property(&self) -> Option<&str> {
        self.violation.as_ref().map(|v| v.property.as_str())
    }
}

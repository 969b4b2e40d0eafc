//! Shared report structures emitted by the axiom/property checkers.

use serde::{Deserialize, Serialize};

/// One checked condition: name, verdict, worst observed slack and an
/// optional witness description.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckItem {
    pub axiom: String,
    pub passed: bool,
    pub worst_slack: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckItem {
    pub fn pass(axiom: impl Into<String>, worst_slack: f64) -> Self {
        CheckItem {
            axiom: axiom.into(),
            passed: true,
            worst_slack,
            witness: None,
        }
    }

    pub fn fail(axiom: impl Into<String>, worst_slack: f64, witness: impl Into<String>) -> Self {
        CheckItem {
            axiom: axiom.into(),
            passed: false,
            worst_slack,
            witness: Some(witness.into()),
        }
    }
}

/// A bundle of checks with an overall verdict.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckReport {
    pub items: Vec<CheckItem>,
}

impl CheckReport {
    pub fn new(items: Vec<CheckItem>) -> Self {
        CheckReport { items }
    }

    pub fn all_passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    pub fn worst_slack(&self) -> f64 {
        self.items
            .iter()
            .map(|i| i.worst_slack)
            .fold(0.0, f64::max)
    }
}

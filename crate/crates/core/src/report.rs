//! Checked inequalities.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::scalar::Real;

/// One evaluated inequality `lhs <= rhs`.
///
/// `pass` holds iff `lhs <= rhs (1 + tol) + atol`; `tol` and `atol` are
/// recorded in `details` next to the intermediate quantities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "T: Real"))]
pub struct BoundReport<T> {
    pub name: String,
    pub lhs: T,
    pub rhs: T,
    pub slack: T,
    pub pass: bool,
    pub details: BTreeMap<String, T>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl<T: Real> BoundReport<T> {
    pub fn inequality(name: impl Into<String>, lhs: T, rhs: T, tol: T, atol: T) -> Self {
        let pass = lhs <= rhs * (T::one() + tol) + atol;
        let mut details = BTreeMap::new();
        details.insert("tol".to_string(), tol);
        details.insert("atol".to_string(), atol);
        Self {
            name: name.into(),
            lhs,
            rhs,
            slack: rhs - lhs,
            pass,
            details,
            notes: Vec::new(),
        }
    }

    /// Report whose verdict is decided by the caller (e.g. an equality check).
    pub fn with_verdict(name: impl Into<String>, lhs: T, rhs: T, pass: bool) -> Self {
        Self {
            name: name.into(),
            lhs,
            rhs,
            slack: rhs - lhs,
            pass,
            details: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    pub fn detail(mut self, key: &str, value: T) -> Self {
        self.details.insert(key.to_string(), value);
        self
    }

    pub fn note(mut self, text: impl Into<String>) -> Self {
        self.notes.push(text.into());
        self
    }

    /// Fails the report in addition to whatever the inequality said.
    pub fn require(mut self, cond: bool, why: &str) -> Self {
        if !cond {
            self.pass = false;
            self.notes.push(format!("failed: {why}"));
        }
        self
    }

    pub fn get(&self, key: &str) -> Option<T> {
        self.details.get(key).copied()
    }
}

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Outcome of one named check. Exact checks carry the residual `"0/1"` when
/// they pass; numeric checks carry a decimal string.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub params: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rhs: Option<String>,
    pub residual: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub details: Option<serde_json::Value>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>, pass: bool, residual: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            params: BTreeMap::new(),
            lhs: None,
            rhs: None,
            residual: residual.into(),
            pass,
            details: None,
        }
    }

    /// An exact check: residual `"0/1"` on success.
    pub fn exact(name: impl Into<String>, pass: bool) -> Self {
        Self::new(name, pass, if pass { "0/1" } else { "nonzero" })
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn sides(mut self, lhs: impl Into<String>, rhs: impl Into<String>) -> Self {
        self.lhs = Some(lhs.into());
        self.rhs = Some(rhs.into());
        self
    }

    pub fn details(mut self, details: serde_json::Value) -> Self {
        self.details = Some(details);
        self
    }
}

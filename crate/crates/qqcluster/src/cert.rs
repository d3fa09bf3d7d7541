//! Pass/fail records for identity checks.

use serde::Serialize;

/// Outcome of one exact identity check. A failing certificate is a result,
/// not an error.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub check: String,
    pub params: serde_json::Value,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Certificate {
    pub fn new(check: &str, params: serde_json::Value, detail: Option<String>) -> Self {
        Certificate { check: check.to_string(), params, pass: detail.is_none(), detail }
    }

    pub fn pass(check: &str, params: serde_json::Value) -> Self {
        Self::new(check, params, None)
    }

    pub fn fail(check: &str, params: serde_json::Value, detail: impl Into<String>) -> Self {
        Self::new(check, params, Some(detail.into()))
    }
}

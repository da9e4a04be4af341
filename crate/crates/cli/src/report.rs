use std::collections::BTreeMap;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub location: String,
    pub message: String,
}

/// The outcome of a command. An error report always carries a diagnostic.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub status: Status,
    pub diagnostics: Vec<Diagnostic>,
    pub counts: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<serde_json::Value>,
    #[serde(skip)]
    pub exit_code: u8,
}

pub const EXIT_INVALID: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

impl Report {
    pub fn ok() -> Self {
        Report {
            status: Status::Ok,
            diagnostics: Vec::new(),
            counts: BTreeMap::new(),
            data: None,
            exit_code: 0,
        }
    }

    pub fn error(exit_code: u8, diagnostic: Diagnostic) -> Self {
        Report {
            status: Status::Error,
            diagnostics: vec![diagnostic],
            exit_code,
            ..Report::ok()
        }
    }

    pub fn fail(exit_code: u8, location: impl Into<String>, message: impl ToString) -> Self {
        Report::error(
            exit_code,
            Diagnostic {
                location: location.into(),
                message: message.to_string(),
            },
        )
    }

    pub fn count(mut self, name: &str, n: usize) -> Self {
        self.counts.insert(name.to_string(), n as u64);
        self
    }

    pub fn with_data(mut self, data: serde_json::Value) -> Self {
        self.data = Some(data);
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

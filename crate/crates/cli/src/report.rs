use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use toric_core::format::int_to_json;
use toric_core::UnimodularMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    InvalidInput,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::InvalidInput => 2,
        }
    }
}

/// One structured record: a wall, a fixed point, a catalog entry, ...
#[derive(Clone, Debug, Serialize)]
pub struct Finding {
    pub kind: &'static str,
    pub message: String,
    pub violation: bool,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub data: Value,
}

impl Finding {
    pub fn info(kind: &'static str, message: impl Into<String>, data: Value) -> Self {
        Finding { kind, message: message.into(), violation: false, data }
    }

    pub fn violation(kind: &'static str, message: impl Into<String>, data: Value) -> Self {
        Finding { kind, message: message.into(), violation: true, data }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub findings: Vec<Finding>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.to_string(), status: Status::Pass, findings: Vec::new(), witness: None }
    }

    pub fn push(&mut self, f: Finding) {
        self.findings.push(f);
    }

    /// Failure of the command itself, not tied to a record.
    pub fn failed(command: &str, status: Status, message: impl Into<String>) -> Self {
        let mut r = Report::new(command);
        r.push(Finding::violation("error", message, Value::Null));
        r.status = status;
        r
    }

    pub fn set_witness(&mut self, m: &UnimodularMatrix) {
        self.witness = Some(matrix_json(m));
    }

    /// Pass unless a violation was recorded; an explicit invalid-input
    /// status is kept.
    pub fn finish(mut self) -> Self {
        if self.status == Status::Pass && self.findings.iter().any(|f| f.violation) {
            self.status = Status::Fail;
        }
        self
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for f in &self.findings {
            let mark = if f.violation { "!! " } else { "" };
            let _ = writeln!(out, "{mark}{}: {}", f.kind, f.message);
        }
        if let Some(Value::Array(rows)) = &self.witness {
            let _ = writeln!(out, "witness:");
            for row in rows {
                let _ = writeln!(out, "  {row}");
            }
        }
        let status = serde_json::to_value(self.status).expect("status serializes");
        let _ = writeln!(out, "{}: {}", self.command, status.as_str().unwrap_or_default());
        out
    }
}

pub fn matrix_json(m: &UnimodularMatrix) -> Value {
    Value::Array(m.rows().iter().map(|r| Value::Array(r.iter().map(int_to_json).collect())).collect())
}

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use jacfact_core::{Budget, FieldConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Text,
}

/// Settings shared by every command.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunConfig {
    pub field: FieldConfig,
    /// Top degree for `hom` and `lmf`.
    pub max_degree: u32,
    pub output: OutputFormat,
    pub budget: Budget,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            field: FieldConfig::Rationals,
            max_degree: 2,
            output: OutputFormat::Json,
            budget: Budget::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// Informational only; never affects the exit code.
    Info,
    Pass,
    /// A mathematical negative result, such as a rejected extension.
    Rejected,
    /// An expected property did not hold.
    Fail,
    Input,
    Resource,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Info | Status::Pass => 0,
            Status::Rejected | Status::Fail => 1,
            Status::Input => 2,
            Status::Resource => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub payload: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub input_hash: String,
    pub field: String,
    pub status: Status,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

/// SHA-256 of the canonical text form of an input, as lowercase hex.
pub fn input_hash(canonical: &str) -> String {
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

impl Report {
    pub fn new(command: &[String], canonical_input: &str, field: FieldConfig) -> Self {
        Self {
            command: command.to_vec(),
            input_hash: input_hash(canonical_input),
            field: field.to_string(),
            status: Status::Pass,
            checks: Vec::new(),
            timing_ms: None,
        }
    }

    /// A report for a failure before any check could run.
    pub fn error(command: &[String], field: FieldConfig, status: Status, message: &str) -> Self {
        let mut r = Self::new(command, "", field);
        r.input_hash = String::new();
        r.push("error", status, Value::String(message.to_string()));
        r
    }

    pub fn push(&mut self, name: impl Into<String>, status: Status, payload: Value) {
        self.checks.push(Check {
            name: name.into(),
            status,
            payload,
        });
        self.status = self.status.max(status);
    }

    pub fn pass_if(&mut self, name: impl Into<String>, ok: bool, payload: Value) {
        self.push(name, if ok { Status::Pass } else { Status::Fail }, payload);
    }

    pub fn exit_code(&self) -> i32 {
        self.checks.iter().map(|c| c.status.exit_code()).max().unwrap_or(0)
    }

    /// Pretty JSON without the timing field; byte-identical across runs.
    pub fn canonical_json(&self) -> String {
        let mut r = self.clone();
        r.timing_ms = None;
        serde_json::to_string_pretty(&r).expect("reports serialize")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command.join(" "));
        let _ = writeln!(out, "input: {}", self.input_hash);
        let _ = writeln!(out, "field: {}", self.field);
        for c in &self.checks {
            let status = serde_json::to_value(c.status).expect("status serializes");
            let _ = writeln!(out, "[{}] {}: {}", status.as_str().unwrap_or("?"), c.name, c.payload);
        }
        if let Some(ms) = self.timing_ms {
            let _ = writeln!(out, "time: {ms} ms");
        }
        let _ = writeln!(out, "exit: {}", self.exit_code());
        out
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => self.to_json(),
            OutputFormat::Text => self.to_text(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn status_drives_exit_code() {
        let mut r = Report::new(&["x".into()], "in", FieldConfig::Rationals);
        assert_eq!(r.exit_code(), 0);
        r.push("note", Status::Info, json!(1));
        assert_eq!(r.exit_code(), 0);
        r.push("ext", Status::Rejected, json!(null));
        assert_eq!(r.exit_code(), 1);
        r.push("budget", Status::Resource, json!(null));
        assert_eq!(r.exit_code(), 3);
        assert_eq!(r.status, Status::Resource);
    }

    #[test]
    fn canonical_json_drops_timing() {
        let mut a = Report::new(&["x".into()], "in", FieldConfig::Rationals);
        a.pass_if("c", true, json!({"b": 1, "a": "1/2"}));
        let mut b = a.clone();
        a.timing_ms = Some(5);
        b.timing_ms = Some(9);
        assert_eq!(a.canonical_json(), b.canonical_json());
        assert!(!a.canonical_json().contains("timing"));
        assert!(a.to_json().contains("timing_ms"));
    }

    #[test]
    fn known_hash() {
        assert_eq!(
            input_hash(""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }
}

use std::fmt::Write;

use serde::Serialize;
use serde_json::Value;

use crate::Descriptor;

/// One named check with its certificate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub summary: String,
    pub certificate: Value,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, summary: impl Into<String>, certificate: Value) -> Self {
        Check {
            name: name.into(),
            passed,
            summary: summary.into(),
            certificate,
        }
    }
}

/// Output of every command. Field order is part of the format.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matroid: Option<Descriptor>,
    pub passed: bool,
    pub checks: Vec<Check>,
    /// Command-specific payload (flat listings, matchings, equations, ...).
    pub data: Value,
    /// Wall-clock milliseconds; only present when requested, since it
    /// breaks byte-for-byte reproducibility.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

impl Report {
    pub fn new(command: &'static str, matroid: Option<Descriptor>, checks: Vec<Check>, data: Value) -> Self {
        Report {
            command,
            matroid,
            passed: checks.iter().all(|c| c.passed),
            checks,
            data,
            timing_ms: None,
        }
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = write!(out, "{}", self.command);
        if let Some(m) = &self.matroid {
            let _ = write!(out, "  {} ({}, n={}, r={})", m.source, m.kind, m.n, m.rank);
        }
        out.push('\n');
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "  {status}  {:<width$}  {}", c.name, c.summary);
        }
        let _ = writeln!(
            out,
            "{} ({} checks, {} failed)",
            if self.passed { "ok" } else { "FAILED" },
            self.checks.len(),
            self.failed_checks().count()
        );
        if let Some(ms) = self.timing_ms {
            let _ = writeln!(out, "elapsed {ms} ms");
        }
        out
    }
}

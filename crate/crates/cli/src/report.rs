use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use lcdual_core::Status;

use crate::suite::{Suite, SuiteReport};

pub const REPORT_SCHEMA: &str = "lcdual-report/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Timing {
    pub total_ms: u64,
    pub suites_ms: BTreeMap<String, u64>,
}

/// The whole output of one `check` run. Everything except `timing` is a
/// function of the inputs, the seed and the tool version.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub schema: &'static str,
    pub tool_version: &'static str,
    pub suite: Suite,
    pub seed: u64,
    pub max_atoms: usize,
    pub input_digest: String,
    pub status: Status,
    pub suites: Vec<SuiteReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

impl VerificationReport {
    pub fn first_failing_suite(&self) -> Option<Suite> {
        self.suites
            .iter()
            .find(|s| s.status.is_fail())
            .map(|s| s.suite)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{REPORT_SCHEMA} suite={} seed={} max-atoms={} digest={}",
            self.suite.name(),
            self.seed,
            self.max_atoms,
            self.input_digest
        );
        for s in &self.suites {
            let _ = writeln!(out, "== {} [{}]", s.suite.name(), label(s.status));
            for c in &s.checks {
                let _ = write!(
                    out,
                    "{:<13} {} {}",
                    label(c.check.status),
                    c.subject,
                    c.check.id
                );
                if !c.check.witness.is_empty() {
                    let w: Vec<String> = c
                        .check
                        .witness
                        .iter()
                        .map(|(k, v)| format!("{k}={v}"))
                        .collect();
                    let _ = write!(out, " ({})", w.join(", "));
                }
                if let Some(n) = &c.check.note {
                    let _ = write!(out, " -- {n}");
                }
                out.push('\n');
            }
        }
        if let Some(t) = &self.timing {
            let _ = writeln!(out, "total {} ms", t.total_ms);
        }
        let _ = writeln!(out, "overall [{}]", label(self.status));
        out
    }
}

pub fn label(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::SampledPass => "sampled-pass",
        Status::Fail => "fail",
        Status::Skipped => "skipped",
    }
}

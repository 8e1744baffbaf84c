//! Pass/fail records produced by every checker.

use std::collections::BTreeMap;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    /// Proved: exhaustive over a finite carrier, or by a closed-form argument.
    Pass,
    /// No counterexample in a documented sample. Never upgraded to `Pass`.
    SampledPass,
    Fail,
    Skipped,
}

impl Status {
    pub fn is_fail(self) -> bool {
        self == Status::Fail
    }

    /// Any failure wins, then any sampled pass; a fold of nothing but skips
    /// is a skip.
    pub fn combine<I: IntoIterator<Item = Status>>(statuses: I) -> Status {
        let mut saw_pass = false;
        let mut saw_sampled = false;
        for s in statuses {
            match s {
                Status::Fail => return Status::Fail,
                Status::SampledPass => saw_sampled = true,
                Status::Pass => saw_pass = true,
                Status::Skipped => {}
            }
        }
        if saw_sampled {
            Status::SampledPass
        } else if saw_pass {
            Status::Pass
        } else {
            Status::Skipped
        }
    }

    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

/// One named check and its outcome. Failures carry a witness: variable
/// name to rendered element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub witness: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    pub fn new(id: impl Into<String>, status: Status) -> Self {
        Check {
            id: id.into(),
            status,
            witness: BTreeMap::new(),
            note: None,
        }
    }

    pub fn pass(id: impl Into<String>) -> Self {
        Check::new(id, Status::Pass)
    }

    pub fn fail(id: impl Into<String>) -> Self {
        Check::new(id, Status::Fail)
    }

    pub fn skipped(id: impl Into<String>, why: impl Into<String>) -> Self {
        Check::new(id, Status::Skipped).with_note(why)
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn with_witness(mut self, name: impl Into<String>, value: impl Into<String>) -> Self {
        self.witness.insert(name.into(), value.into());
        self
    }

    pub fn witness_value(&self, name: &str) -> Option<&str> {
        self.witness.get(name).map(String::as_str)
    }
}

/// An ordered list of checks under a title.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    /// Status of the check `id`; panics if absent, which is a test bug.
    pub fn status_of(&self, id: &str) -> Status {
        self.get(id)
            .unwrap_or_else(|| panic!("report `{}` has no check `{id}`", self.title))
            .status
    }

    pub fn status(&self) -> Status {
        Status::combine(self.checks.iter().map(|c| c.status))
    }

    /// No check failed.
    pub fn passed(&self) -> bool {
        !self.status().is_fail()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status.is_fail())
    }
}

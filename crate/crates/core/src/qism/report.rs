use std::time::Instant;

use serde::{Deserialize, Serialize};

/// One verified identity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    /// Equation tag of the identity being checked, e.g. `"1.3"`.
    pub eq: String,
    pub backend: String,
    pub pass: bool,
    /// `"0"` for an exact zero, otherwise a summary of what remained.
    pub residual: String,
    /// Set when a printed claim disagrees with a computation that is
    /// otherwise consistent.
    pub flagged: bool,
    pub ms: u64,
}

impl CheckRecord {
    pub fn new(id: impl Into<String>, eq: impl Into<String>, backend: impl Into<String>) -> Self {
        CheckRecord {
            id: id.into(),
            eq: eq.into(),
            backend: backend.into(),
            pass: false,
            residual: String::new(),
            flagged: false,
            ms: 0,
        }
    }

    pub fn zero(mut self) -> Self {
        self.pass = true;
        self.residual = "0".into();
        self
    }

    pub fn outcome(mut self, pass: bool, residual: impl Into<String>) -> Self {
        self.pass = pass;
        self.residual = residual.into();
        self
    }

    pub fn flag(mut self, flagged: bool) -> Self {
        self.flagged = flagged;
        self
    }

    pub fn timed(mut self, start: Instant) -> Self {
        self.ms = start.elapsed().as_millis() as u64;
        self
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct RelationReport {
    pub records: Vec<CheckRecord>,
    /// Product of the denominators cleared before comparing, if any.
    pub clearing: Option<String>,
}

impl RelationReport {
    pub fn new(records: Vec<CheckRecord>) -> Self {
        RelationReport { records, clearing: None }
    }

    pub fn pass(&self) -> bool {
        !self.records.is_empty() && self.records.iter().all(|r| r.pass)
    }

    /// Records that failed without being flagged.
    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.pass && !r.flagged)
    }

    pub fn flagged(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| r.flagged)
    }

    pub fn extend(&mut self, other: RelationReport) {
        self.records.extend(other.records);
        if self.clearing.is_none() {
            self.clearing = other.clearing;
        }
    }
}

/// Shorten long residual descriptions for reports.
pub fn clip(s: &str, n: usize) -> String {
    if s.chars().count() <= n {
        s.to_string()
    } else {
        let head: String = s.chars().take(n).collect();
        format!("{head}...")
    }
}

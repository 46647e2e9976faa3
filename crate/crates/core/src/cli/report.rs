use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::config::{Format, Suite, SuiteConfig};
use super::CliError;
use crate::qism::CheckRecord;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    /// Failures that are not flagged.
    pub fail: usize,
    pub flagged: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub config: SuiteConfig,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl Report {
    pub fn new(config: SuiteConfig, sections: Vec<(Suite, Vec<CheckRecord>)>) -> Result<Self, CliError> {
        let mut checks = Vec::new();
        let mut seen = HashSet::new();
        for (suite, recs) in sections {
            for mut r in recs {
                r.id = format!("{suite}/{}", r.id);
                if !seen.insert(r.id.clone()) {
                    return Err(CliError::Duplicate(r.id));
                }
                checks.push(r);
            }
        }
        let summary = Summary {
            pass: checks.iter().filter(|r| r.pass).count(),
            fail: checks.iter().filter(|r| !r.pass && !r.flagged).count(),
            flagged: checks.iter().filter(|r| r.flagged).count(),
        };
        Ok(Report { version: env!("CARGO_PKG_VERSION").to_string(), config, checks, summary })
    }

    /// No failure other than flagged ones.
    pub fn ok(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn flagged(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|r| r.flagged)
    }

    /// The same report with every timing set to zero.
    pub fn without_timings(&self) -> Report {
        let mut r = self.clone();
        for c in &mut r.checks {
            c.ms = 0;
        }
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, CliError> {
        serde_json::from_str(s).map_err(|e| CliError::Config(format!("report: {e}")))
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        let c = &self.config;
        let suites: Vec<&str> = c.suites.iter().map(|x| x.name()).collect();
        let _ = writeln!(s, "# verify report\n");
        let _ = writeln!(
            s,
            "version {}, suites {}, precision {} bits, degree {}, samples {}, seed {}\n",
            self.version,
            suites.join(" "),
            c.precision,
            c.degree,
            c.samples,
            c.seed
        );
        let _ = writeln!(
            s,
            "**{} passed, {} failed, {} flagged**\n",
            self.summary.pass, self.summary.fail, self.summary.flagged
        );
        for suite in &c.suites {
            let prefix = format!("{suite}/");
            let rows: Vec<&CheckRecord> = self.checks.iter().filter(|r| r.id.starts_with(&prefix)).collect();
            let _ = writeln!(s, "## {suite}\n");
            let _ = writeln!(s, "| eq | id | backend | result | residual | ms |");
            let _ = writeln!(s, "|---|---|---|---|---|---|");
            for r in rows {
                let _ = writeln!(
                    s,
                    "| ({}) | `{}` | {} | {} | {} | {} |",
                    r.eq,
                    &r.id[prefix.len()..],
                    r.backend,
                    status(r),
                    cell(&r.residual),
                    r.ms
                );
            }
            s.push('\n');
        }
        let flagged: Vec<&CheckRecord> = self.flagged().collect();
        if !flagged.is_empty() {
            let _ = writeln!(s, "## Flagged discrepancies\n");
            for r in flagged {
                let _ = writeln!(s, "- `{}` ({}): {}", r.id, r.eq, cell(&r.residual));
            }
        }
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Markdown => self.to_markdown(),
        }
    }

    pub fn write(&self, path: &Path, format: Format) -> Result<(), CliError> {
        std::fs::write(path, self.render(format)).map_err(|e| CliError::Io(path.to_path_buf(), e.to_string()))
    }
}

fn status(r: &CheckRecord) -> &'static str {
    match (r.pass, r.flagged) {
        (true, _) => "pass",
        (false, true) => "FLAG",
        (false, false) => "FAIL",
    }
}

fn cell(s: &str) -> String {
    s.replace('|', "\\|").replace('\n', " ")
}

//! Line-oriented check reports.
//!
//! Every failing fact becomes one `FAIL <check> <witness...>` line, so reports
//! can be grepped and compared in tests.

use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub check: String,
    pub witness: Vec<String>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FAIL {}", self.check)?;
        for w in &self.witness {
            write!(f, " {w}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    violations: Vec<Violation>,
    skipped: Vec<(String, String)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push<I, S>(&mut self, check: &str, witness: I)
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.violations.push(Violation {
            check: check.to_string(),
            witness: witness.into_iter().map(Into::into).collect(),
        });
    }

    /// Records that `check` could not run because a prerequisite failed.
    pub fn skip(&mut self, check: &str, reason: &str) {
        self.skipped.push((check.to_string(), reason.to_string()));
    }

    pub fn extend(&mut self, other: Report) {
        self.violations.extend(other.violations);
        self.skipped.extend(other.skipped);
    }

    pub fn is_pass(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    pub fn skipped(&self) -> &[(String, String)] {
        &self.skipped
    }

    pub fn is_skipped(&self, check: &str) -> bool {
        self.skipped.iter().any(|(c, _)| c == check)
    }

    pub fn fails(&self, check: &str) -> bool {
        self.violations.iter().any(|v| v.check == check)
    }

    /// Names of the checks with at least one violation.
    pub fn failed_checks(&self) -> BTreeSet<String> {
        self.violations.iter().map(|v| v.check.clone()).collect()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        for (check, reason) in &self.skipped {
            writeln!(f, "SKIP {check} {reason}")?;
        }
        Ok(())
    }
}

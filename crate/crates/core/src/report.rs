//! Pass/fail records shared by every verification routine.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub check: String,
    pub witness: String,
}

/// Outcome of one named verification: how many instances were evaluated
/// and which of them failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub name: String,
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn new(name: impl Into<String>) -> Self {
        Report { name: name.into(), checked: 0, violations: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Counts one instance; the witness is only rendered on failure.
    pub fn check(&mut self, ok: bool, check: &str, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations.push(Violation { check: check.to_string(), witness: witness() });
        }
    }

    pub fn fail(&mut self, check: &str, witness: impl Into<String>) {
        self.checked += 1;
        self.violations.push(Violation { check: check.to_string(), witness: witness.into() });
    }

    pub fn absorb(&mut self, other: Report) {
        self.checked += other.checked;
        self.violations.extend(other.violations);
    }

    pub fn first_violation(&self) -> Option<&Violation> {
        self.violations.first()
    }

    pub fn has_check(&self, check: &str) -> bool {
        self.violations.iter().any(|v| v.check == check)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "pass" } else { "fail" };
        write!(f, "{}: {} ({} checked", self.name, status, self.checked)?;
        if !self.passed() {
            write!(f, ", {} violations", self.violations.len())?;
        }
        write!(f, ")")?;
        for v in self.violations.iter().take(5) {
            write!(f, "\n  [{}] {}", v.check, v.witness)?;
        }
        Ok(())
    }
}

/// True when every report passed.
pub fn all_passed<'a>(reports: impl IntoIterator<Item = &'a Report>) -> bool {
    reports.into_iter().all(Report::passed)
}

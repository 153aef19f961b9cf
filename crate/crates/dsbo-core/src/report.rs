//! Immutable pass/fail records produced by the verification suites.

use alloc::string::String;
use alloc::vec::Vec;

/// One verified identity: a short machine-readable check name, the
/// artifact-internal anchor it certifies, the outcome, and a human-readable
/// witness (empty on success unless the value itself is informative).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub check: String,
    pub anchor: String,
    pub pass: bool,
    pub details: String,
}

impl CheckReport {
    pub fn new(check: &str, anchor: &str, pass: bool, details: String) -> Self {
        CheckReport {
            check: String::from(check),
            anchor: String::from(anchor),
            pass,
            details,
        }
    }

    pub fn status(&self) -> &'static str {
        if self.pass {
            "PASS"
        } else {
            "FAIL"
        }
    }
}

/// A named list of checks; overall status is the conjunction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Suite {
    pub name: String,
    pub checks: Vec<CheckReport>,
}

impl Suite {
    pub fn new(name: &str) -> Self {
        Suite {
            name: String::from(name),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, report: CheckReport) {
        self.checks.push(report);
    }

    pub fn overall_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

//! Check reports: exact expected/actual value pairs per named check, one
//! report per suite.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Report {
    pub geometry: String,
    pub suite: String,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl Report {
    pub fn new(geometry: &str, suite: &str) -> Self {
        Report {
            geometry: geometry.to_string(),
            suite: suite.to_string(),
            checks: Vec::new(),
            pass: true,
        }
    }

    pub fn push(
        &mut self,
        name: impl Into<String>,
        expected: impl ToString,
        actual: impl ToString,
    ) {
        let expected = expected.to_string();
        let actual = actual.to_string();
        let pass = expected == actual;
        self.pass &= pass;
        self.checks.push(Check {
            name: name.into(),
            expected,
            actual,
            pass,
        });
    }

    /// A check that holds when the two values differ (negative control).
    pub fn push_expect_mismatch(
        &mut self,
        name: impl Into<String>,
        expected: impl ToString,
        actual: impl ToString,
    ) {
        let expected = expected.to_string();
        let actual = actual.to_string();
        let pass = expected != actual;
        self.pass &= pass;
        self.checks.push(Check {
            name: name.into(),
            expected: format!("anything but {expected}"),
            actual,
            pass,
        });
    }

    pub fn print(&self) {
        println!("== {} / {} ==", self.geometry, self.suite);
        for check in &self.checks {
            let mark = if check.pass { "ok  " } else { "FAIL" };
            println!(
                "  [{mark}] {} (expected {}, got {})",
                check.name, check.expected, check.actual
            );
        }
        println!(
            "  suite {}: {}",
            self.suite,
            if self.pass { "pass" } else { "FAIL" }
        );
    }
}

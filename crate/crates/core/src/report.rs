//! Pass/fail reports shared by the checks and the command line.

use std::fmt::Write as _;

use serde::Serialize;

use crate::exactla::Matrix;

pub const SCHEMA: &str = "periodic-twist.report/1";

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Assertion {
    pub label: String,
    pub passed: bool,
    /// The displayed object or claim this assertion reproduces.
    pub reference: String,
    /// Dimensions involved, in the order the check visits them.
    pub ledger: Vec<usize>,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
    /// Re-verifiable data for a passing verdict, such as an isomorphism.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Vec<u32>>>,
}

impl Assertion {
    pub fn new(label: impl Into<String>, passed: bool) -> Assertion {
        Assertion {
            label: label.into(),
            passed,
            reference: String::new(),
            ledger: Vec::new(),
            detail: String::new(),
            witness: None,
        }
    }

    pub fn reference(mut self, r: impl Into<String>) -> Assertion {
        self.reference = r.into();
        self
    }

    pub fn ledger(mut self, dims: Vec<usize>) -> Assertion {
        self.ledger = dims;
        self
    }

    pub fn detail(mut self, d: impl Into<String>) -> Assertion {
        self.detail = d.into();
        self
    }

    pub fn witness(mut self, m: Option<&Matrix>) -> Assertion {
        self.witness = m.map(|m| (0..m.rows()).map(|r| m.row(r).to_vec()).collect());
        self
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq, Default)]
pub struct Report {
    pub schema: &'static str,
    pub title: String,
    pub assertions: Vec<Assertion>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Report {
        Report { schema: SCHEMA, title: title.into(), assertions: Vec::new() }
    }

    pub fn push(&mut self, a: Assertion) {
        self.assertions.push(a);
    }

    pub fn extend(&mut self, other: Report) {
        self.assertions.extend(other.assertions);
    }

    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.passed)
    }

    pub fn first_failure(&self) -> Option<&Assertion> {
        self.assertions.iter().find(|a| !a.passed)
    }

    pub fn get(&self, label: &str) -> Option<&Assertion> {
        self.assertions.iter().find(|a| a.label == label)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.title);
        for a in &self.assertions {
            let _ = writeln!(out, "  {}: {}", a.label, if a.passed { "PASS" } else { "FAIL" });
            if !a.detail.is_empty() {
                for line in a.detail.lines() {
                    let _ = writeln!(out, "      {line}");
                }
            }
            if !a.passed && !a.reference.is_empty() {
                let _ = writeln!(out, "      expected by: {}", a.reference);
            }
        }
        let failed = self.assertions.iter().filter(|a| !a.passed).count();
        let _ = writeln!(out, "{} assertions, {} failed", self.assertions.len(), failed);
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

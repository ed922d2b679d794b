//! Pass/fail reports for the identity-verification suites.

use std::fmt;

/// One verified identity: name, outcome, and the first failing detail
/// (e.g. a multigrade or degree) when it did not hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckItem {
    pub name: String,
    pub pass: bool,
    pub detail: Option<String>,
}

/// An ordered collection of identity checks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub items: Vec<CheckItem>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, name: impl Into<String>, pass: bool, detail: Option<String>) {
        self.items.push(CheckItem {
            name: name.into(),
            pass,
            detail,
        });
    }

    pub fn check(&mut self, name: impl Into<String>, pass: bool) {
        self.push(name, pass, None);
    }

    pub fn all_pass(&self) -> bool {
        self.items.iter().all(|i| i.pass)
    }

    pub fn merge(&mut self, other: Report) {
        self.items.extend(other.items);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for item in &self.items {
            let status = if item.pass { "PASS" } else { "FAIL" };
            match &item.detail {
                Some(d) => writeln!(f, "{status}  {} ({d})", item.name)?,
                None => writeln!(f, "{status}  {}", item.name)?,
            }
        }
        Ok(())
    }
}

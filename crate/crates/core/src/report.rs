//! Witness-bearing verification reports.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub witness: Option<String>,
}

/// Outcome of a verification run: one entry per check, failing entries carry
/// a counterexample.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityReport {
    pub subject: String,
    pub checks: Vec<Check>,
    /// Wall-clock time, filled only on request so that reports stay
    /// byte-for-byte reproducible by default.
    pub elapsed_ms: Option<u64>,
}

impl DualityReport {
    pub fn new(subject: impl Into<String>) -> Self {
        DualityReport {
            subject: subject.into(),
            checks: Vec::new(),
            elapsed_ms: None,
        }
    }

    pub fn push(&mut self, name: impl Into<String>, pass: bool, witness: Option<String>) {
        self.checks.push(Check {
            name: name.into(),
            pass,
            witness: if pass {
                None
            } else {
                witness.or_else(|| Some("no witness recorded".into()))
            },
        });
    }

    /// Records `Ok` as a pass and `Err(witness)` as a failure.
    pub fn record(&mut self, name: impl Into<String>, outcome: std::result::Result<(), String>) {
        match outcome {
            Ok(()) => self.push(name, true, None),
            Err(w) => self.push(name, false, Some(w)),
        }
    }

    /// Adds the checks of `other`, prefixing their names.
    pub fn absorb(&mut self, prefix: &str, other: DualityReport) {
        for c in other.checks {
            self.checks.push(Check {
                name: if prefix.is_empty() {
                    c.name
                } else {
                    format!("{prefix} / {}", c.name)
                },
                ..c
            });
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.failures().next()
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for DualityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.subject)?;
        for c in &self.checks {
            match &c.witness {
                Some(w) if !c.pass => writeln!(f, "  FAIL {}: {}", c.name, w)?,
                _ => writeln!(f, "  {} {}", if c.pass { "pass" } else { "FAIL" }, c.name)?,
            }
        }
        if let Some(ms) = self.elapsed_ms {
            writeln!(f, "  elapsed {ms} ms")?;
        }
        write!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::maps::{Certificate, Morphism, Outcome, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Inconclusive,
    Fail,
}

impl CheckStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Inconclusive => "inconclusive",
            CheckStatus::Fail => "fail",
        }
    }
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of one identity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub label: String,
    /// Stable identifier of the checked identity.
    pub anchor: String,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub millis: u64,
}

impl CheckResult {
    pub fn from_outcome(label: &str, anchor: &str, outcome: Outcome, millis: u64) -> Self {
        let (status, witness, note) = match outcome {
            Outcome::Equal => (CheckStatus::Pass, None, None),
            Outcome::Differ(w) => (CheckStatus::Fail, Some(w), None),
            Outcome::Inconclusive(m) => (CheckStatus::Inconclusive, None, Some(m)),
        };
        CheckResult {
            label: label.to_string(),
            anchor: anchor.to_string(),
            status,
            witness,
            note,
            millis,
        }
    }

    /// Time `f` and record its outcome.
    pub fn run(label: &str, anchor: &str, f: impl FnOnce() -> Result<Outcome>) -> Result<Self> {
        let start = Instant::now();
        let outcome = f()?;
        Ok(Self::from_outcome(
            label,
            anchor,
            outcome,
            start.elapsed().as_millis() as u64,
        ))
    }

    /// A morphism's well-definedness certificate as a check.
    pub fn certificate(m: &Morphism, anchor: &str) -> Self {
        let outcome = match m.certificate() {
            Certificate::Verified => Outcome::Equal,
            Certificate::Failed(w) => Outcome::Differ(w.clone()),
            Certificate::Inconclusive(msg) => Outcome::Inconclusive(msg.clone()),
            Certificate::Unchecked => {
                Outcome::Inconclusive(format!("{} was not certified", m.name()))
            }
        };
        Self::from_outcome(&format!("{} is well defined", m.name()), anchor, outcome, 0)
    }
}

/// Results of one suite in declaration order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub suite: String,
    pub datum: String,
    pub results: Vec<CheckResult>,
}

impl CheckReport {
    pub fn new(suite: impl Into<String>, datum: impl Into<String>) -> Self {
        CheckReport {
            suite: suite.into(),
            datum: datum.into(),
            results: Vec::new(),
        }
    }

    pub fn push(&mut self, r: CheckResult) {
        self.results.push(r);
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.results.extend(other.results);
    }

    /// Worst status among the results; an empty report passes.
    pub fn status(&self) -> CheckStatus {
        self.results
            .iter()
            .map(|r| r.status)
            .max()
            .unwrap_or(CheckStatus::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results
            .iter()
            .filter(|r| r.status == CheckStatus::Fail)
    }

    pub fn get(&self, label: &str) -> Option<&CheckResult> {
        self.results.iter().find(|r| r.label == label)
    }
}

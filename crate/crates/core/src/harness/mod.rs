//! Executable reproductions and the criteria suite.

mod corpus;
mod criteria;
mod repro;
mod witness;

pub use corpus::{generate_corpus, generate_corpus_over, Corpus, DEFAULT_POOL};
pub use criteria::{
    check_criteria, check_term, handles_distinct, substitution_invariance, CriteriaBounds,
};
pub use repro::{repro_cex1, repro_cex2, tabulated_names, ReproBounds};
pub use witness::{repro_name_server, repro_separation_witness, served_names};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lts::Bounds;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Pass,
    Fail,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub label: String,
    pub verdict: Verdict,
    pub evidence: String,
}

impl Check {
    pub fn new(label: impl Into<String>, verdict: Verdict, evidence: impl Into<String>) -> Self {
        Check {
            label: label.into(),
            verdict,
            evidence: evidence.into(),
        }
    }

    pub fn pass_if(label: impl Into<String>, ok: bool, evidence: impl Into<String>) -> Self {
        let verdict = if ok { Verdict::Pass } else { Verdict::Fail };
        Check::new(label, verdict, evidence)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub name: String,
    pub checks: Vec<Check>,
    pub bounds_used: Vec<(String, Bounds)>,
}

impl Report {
    pub fn new(name: impl Into<String>) -> Self {
        Report {
            name: name.into(),
            checks: Vec::new(),
            bounds_used: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn bounds(&mut self, what: impl Into<String>, b: Bounds) {
        self.bounds_used.push((what.into(), b));
    }

    /// Every check passes.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.verdict == Verdict::Pass)
    }

    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.verdict == Verdict::Fail)
    }

    pub fn count(&self, v: Verdict) -> usize {
        self.checks.iter().filter(|c| c.verdict == v).count()
    }

    pub fn unknown_rate(&self) -> f64 {
        if self.checks.is_empty() {
            0.0
        } else {
            self.count(Verdict::Unknown) as f64 / self.checks.len() as f64
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("bounds too small: {0}")]
    BoundsTooSmall(String),
    #[error(transparent)]
    Encode(#[from] crate::encode::EncodeError),
}

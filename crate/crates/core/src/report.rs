//! Verification reports: one entry per checked relation.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

/// Current report schema version, bumped on any field change.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Status {
    Pass,
    Fail,
    /// A printed relation that the oracle contradicts. Does not fail a run.
    PaperDiscrepancy,
}

/// What an entry's error metric is expected to do.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Expectation {
    /// Passes when `max_abs_error ≤ tolerance`.
    Agree,
    /// Passes when `max_abs_error > tolerance`: the entry exhibits a
    /// deviation that must be visible.
    Differ,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Entry {
    pub relation_id: String,
    pub max_abs_error: f64,
    pub tolerance: f64,
    pub expect: Expectation,
    pub status: Status,
    pub notes: String,
}

impl Entry {
    fn met(expect: Expectation, err: f64, tol: f64) -> bool {
        match expect {
            Expectation::Agree => err <= tol,
            Expectation::Differ => err > tol,
        }
    }

    /// A relation the implementation must satisfy.
    pub fn check(id: impl Into<String>, err: f64, tol: f64) -> Entry {
        let status = if Self::met(Expectation::Agree, err, tol) { Status::Pass } else { Status::Fail };
        Entry {
            relation_id: id.into(),
            max_abs_error: err,
            tolerance: tol,
            expect: Expectation::Agree,
            status,
            notes: String::new(),
        }
    }

    /// A printed claim tested against the oracle; disagreement is recorded
    /// as [`Status::PaperDiscrepancy`] rather than a failure.
    pub fn claim(id: impl Into<String>, err: f64, tol: f64) -> Entry {
        let status = if Self::met(Expectation::Agree, err, tol) { Status::Pass } else { Status::PaperDiscrepancy };
        Entry { status, ..Self::check(id, err, tol) }
    }

    /// A deviation that must exceed `threshold`.
    pub fn violation(id: impl Into<String>, deviation: f64, threshold: f64) -> Entry {
        let status = if Self::met(Expectation::Differ, deviation, threshold) { Status::Pass } else { Status::Fail };
        Entry {
            relation_id: id.into(),
            max_abs_error: deviation,
            tolerance: threshold,
            expect: Expectation::Differ,
            status,
            notes: String::new(),
        }
    }

    /// An evaluation that could not be carried out at all.
    pub fn error(id: impl Into<String>, tol: f64, err: &crate::Error) -> Entry {
        Entry {
            relation_id: id.into(),
            max_abs_error: f64::INFINITY,
            tolerance: tol,
            expect: Expectation::Agree,
            status: Status::Fail,
            notes: err.to_string(),
        }
    }

    pub fn with_notes(mut self, notes: impl Into<String>) -> Entry {
        self.notes = notes.into();
        self
    }

    /// Whether `status` is consistent with the error metric.
    pub fn is_consistent(&self) -> bool {
        let met = Self::met(self.expect, self.max_abs_error, self.tolerance);
        match self.status {
            Status::Pass => met,
            Status::Fail | Status::PaperDiscrepancy => !met,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Environment {
    pub cutoffs: BTreeMap<String, usize>,
    pub tolerances: BTreeMap<String, f64>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct VerificationReport {
    pub schema_version: u32,
    pub suite: String,
    pub entries: Vec<Entry>,
    pub environment: Environment,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>) -> Self {
        VerificationReport {
            schema_version: SCHEMA_VERSION,
            suite: suite.into(),
            entries: Vec::new(),
            environment: Environment::default(),
        }
    }

    pub fn push(&mut self, entry: Entry) {
        self.entries.push(entry);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.entries.extend(other.entries);
        for (k, v) in other.environment.cutoffs {
            self.environment.cutoffs.entry(k).or_insert(v);
        }
        for (k, v) in other.environment.tolerances {
            self.environment.tolerances.entry(k).or_insert(v);
        }
    }

    pub fn record_cutoff(&mut self, name: impl Into<String>, cutoff: usize) {
        let slot = self.environment.cutoffs.entry(name.into()).or_insert(cutoff);
        *slot = (*slot).max(cutoff);
    }

    pub fn record_tolerance(&mut self, name: impl Into<String>, tol: f64) {
        self.environment.tolerances.insert(name.into(), tol);
    }

    /// True when no entry has [`Status::Fail`].
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(|e| e.status == Status::Fail)
    }

    pub fn find(&self, relation_id: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.relation_id == relation_id)
    }

    /// Entries whose id starts with `prefix`.
    pub fn matching<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a Entry> + 'a {
        self.entries.iter().filter(move |e| e.relation_id.starts_with(prefix))
    }

    /// Largest error over entries whose id starts with `prefix`.
    pub fn max_error(&self, prefix: &str) -> f64 {
        self.matching(prefix).map(|e| e.max_abs_error).fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_follows_error() {
        assert_eq!(Entry::check("a", 1e-9, 1e-8).status, Status::Pass);
        assert_eq!(Entry::check("a", 1e-7, 1e-8).status, Status::Fail);
        assert_eq!(Entry::claim("a", 1.0, 1e-8).status, Status::PaperDiscrepancy);
        assert_eq!(Entry::violation("a", 0.1, 1e-3).status, Status::Pass);
        assert_eq!(Entry::violation("a", 1e-4, 1e-3).status, Status::Fail);
        for e in [Entry::check("a", 2.0, 1.0), Entry::claim("b", 0.0, 1.0), Entry::violation("c", 3.0, 1.0)] {
            assert!(e.is_consistent());
        }
    }

    #[test]
    fn discrepancies_do_not_fail_a_report() {
        let mut r = VerificationReport::new("x");
        r.push(Entry::claim("Eq.62", 1.0, 1e-8));
        assert!(r.passed());
        r.push(Entry::check("Eq.68", 1.0, 1e-8));
        assert!(!r.passed());
        assert_eq!(r.failures().count(), 1);
    }
}

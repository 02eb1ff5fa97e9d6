//! Verdict records shared by every checker.
//!
//! A [`Check`] is one named property evaluated on one algebra. Failing checks
//! carry a [`Witness`]: the lexicographically least tuple of elements at which
//! the property breaks, plus the two evaluated sides when the property is an
//! equation.

use std::fmt;

use crate::Elem;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    /// Variable names, parallel to `tuple`.
    pub labels: Vec<&'static str>,
    pub tuple: Vec<Elem>,
    /// Evaluated left and right sides of a violated equation.
    pub sides: Option<(Elem, Elem)>,
    pub note: Option<String>,
}

impl Witness {
    pub fn new(labels: &[&'static str], tuple: &[Elem]) -> Self {
        Witness {
            labels: labels.to_vec(),
            tuple: tuple.to_vec(),
            sides: None,
            note: None,
        }
    }

    pub fn with_sides(mut self, lhs: Elem, rhs: Elem) -> Self {
        self.sides = Some((lhs, rhs));
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Renders with a caller-supplied element namer.
    pub fn render(&self, name: impl Fn(Elem) -> String) -> String {
        let mut out = self
            .labels
            .iter()
            .zip(&self.tuple)
            .map(|(l, &e)| format!("{l}={}", name(e)))
            .collect::<Vec<_>>()
            .join(" ");
        if let Some((l, r)) = self.sides {
            if !out.is_empty() {
                out.push(' ');
            }
            out.push_str(&format!("lhs={} rhs={}", name(l), name(r)));
        }
        if let Some(note) = &self.note {
            if !out.is_empty() {
                out.push(' ');
            }
            out.push_str(&format!("note=\"{note}\""));
        }
        out
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(|e| e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    Skipped(String),
}

/// Whether a check decides the overall verdict or only classifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Requirement,
    Classification,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    /// Number of tuples examined. Equals the full tuple space when the check holds.
    pub tuples: u64,
    pub role: Role,
}

impl Check {
    pub fn holds(name: impl Into<String>, tuples: u64) -> Self {
        Check {
            name: name.into(),
            verdict: Verdict::Holds,
            witness: None,
            tuples,
            role: Role::Requirement,
        }
    }

    pub fn fails(name: impl Into<String>, tuples: u64, witness: Witness) -> Self {
        Check {
            name: name.into(),
            verdict: Verdict::Fails,
            witness: Some(witness),
            tuples,
            role: Role::Requirement,
        }
    }

    pub fn skipped(name: impl Into<String>, reason: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            verdict: Verdict::Skipped(reason.into()),
            witness: None,
            tuples: 0,
            role: Role::Requirement,
        }
    }

    /// Builds from a scan outcome.
    pub fn from_outcome(name: impl Into<String>, tuples: u64, failure: Option<Witness>) -> Self {
        match failure {
            None => Check::holds(name, tuples),
            Some(w) => Check::fails(name, tuples, w),
        }
    }

    pub fn as_classification(mut self) -> Self {
        self.role = Role::Classification;
        self
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn is_holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    pub fn is_fails(&self) -> bool {
        self.verdict == Verdict::Fails
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PropertyReport {
    pub checks: Vec<Check>,
}

impl PropertyReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: PropertyReport) {
        self.checks.extend(other.checks);
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// True when the named check exists and holds.
    pub fn holds(&self, name: &str) -> bool {
        self.get(name).is_some_and(Check::is_holds)
    }

    /// True when no requirement fails. Skipped checks do not count against.
    pub fn all_hold(&self) -> bool {
        self.checks
            .iter()
            .filter(|c| c.role == Role::Requirement)
            .all(|c| !c.is_fails())
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks
            .iter()
            .find(|c| c.role == Role::Requirement && c.is_fails())
    }

    pub fn as_classification(mut self) -> Self {
        for c in &mut self.checks {
            c.role = Role::Classification;
        }
        self
    }
}

impl IntoIterator for PropertyReport {
    type Item = Check;
    type IntoIter = std::vec::IntoIter<Check>;

    fn into_iter(self) -> Self::IntoIter {
        self.checks.into_iter()
    }
}

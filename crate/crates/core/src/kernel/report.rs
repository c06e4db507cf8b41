use std::fmt;

use serde::{Deserialize, Serialize};

use super::vect::Vect;
use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// First counterexample of a failed identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub input: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub id: String,
    pub status: Status,
    pub trials: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl CheckReport {
    pub fn pass(id: impl Into<String>, trials: usize) -> Self {
        CheckReport { id: id.into(), status: Status::Pass, trials, witness: None }
    }

    pub fn fail(id: impl Into<String>, trials: usize, witness: Witness) -> Self {
        CheckReport { id: id.into(), status: Status::Fail, trials, witness: Some(witness) }
    }

    pub fn skipped(id: impl Into<String>) -> Self {
        CheckReport { id: id.into(), status: Status::Skipped, trials: 0, witness: None }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }

    /// Prefixes the id, e.g. to namespace a sub-check inside a suite.
    pub fn prefixed(mut self, prefix: &str) -> Self {
        self.id = format!("{prefix}.{}", self.id);
        self
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let st = match self.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skipped => "skipped",
        };
        write!(f, "{:<40} {:<8} trials={}", self.id, st, self.trials)?;
        if let Some(w) = &self.witness {
            write!(f, "\n    at {}\n    lhs = {}\n    rhs = {}", w.input, w.lhs, w.rhs)?;
        }
        Ok(())
    }
}

/// Accumulates trials of one identity, keeping the first counterexample.
pub struct Check {
    id: String,
    trials: usize,
    witness: Option<Witness>,
}

impl Check {
    pub fn new(id: impl Into<String>) -> Self {
        Check { id: id.into(), trials: 0, witness: None }
    }

    pub fn ok(&self) -> bool {
        self.witness.is_none()
    }

    pub fn holds(&mut self, input: impl fmt::Display, ok: bool, lhs: impl fmt::Display, rhs: impl fmt::Display) {
        self.trials += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(Witness { input: input.to_string(), lhs: lhs.to_string(), rhs: rhs.to_string() });
        }
    }

    /// Records `lhs == rhs`; returns whether it held.
    pub fn eq(&mut self, input: impl fmt::Display, lhs: &Vect, rhs: &Vect) -> bool {
        let ok = lhs == rhs;
        self.holds(input, ok, lhs, rhs);
        ok
    }

    /// Records the outcome of a fallible comparison; errors count as failures.
    pub fn eq_res(&mut self, input: impl fmt::Display, sides: Result<(Vect, Vect), Error>) -> bool {
        match sides {
            Ok((l, r)) => self.eq(input, &l, &r),
            Err(e) => {
                self.holds(input, false, format!("error: {e}"), "-");
                false
            }
        }
    }

    pub fn finish(self) -> CheckReport {
        match self.witness {
            None => CheckReport::pass(self.id, self.trials),
            Some(w) => CheckReport::fail(self.id, self.trials, w),
        }
    }
}

pub fn all_pass(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.status != Status::Fail)
}

pub fn find<'a>(reports: &'a [CheckReport], id: &str) -> Option<&'a CheckReport> {
    reports.iter().find(|r| r.id == id)
}

/// Combines reports sharing an id, keeping first-seen order: trials add up,
/// any failure wins and keeps its first witness, and a check counts as
/// skipped only if every part was skipped.
pub fn merge(reports: impl IntoIterator<Item = CheckReport>) -> Vec<CheckReport> {
    let mut out: Vec<CheckReport> = Vec::new();
    for r in reports {
        match out.iter_mut().find(|o| o.id == r.id) {
            None => out.push(r),
            Some(o) => {
                o.trials += r.trials;
                match (o.status, r.status) {
                    (Status::Fail, _) => {}
                    (_, Status::Fail) => {
                        o.status = Status::Fail;
                        o.witness = r.witness;
                    }
                    (Status::Skipped, Status::Pass) => o.status = Status::Pass,
                    _ => {}
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{BasisIndex, Scalar};

    #[test]
    fn first_witness_kept() {
        let mut c = Check::new("t");
        let a = Vect::basis(BasisIndex::GroupLike(1));
        let b = Vect::basis(BasisIndex::GroupLike(2));
        assert!(c.eq("x", &a, &a));
        assert!(!c.eq("y", &a, &b));
        assert!(!c.eq("z", &b, &a.scale(&Scalar::int(2))));
        let r = c.finish();
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.trials, 3);
        assert_eq!(r.witness.unwrap().input, "y");
    }
}

//! Machine-readable verification verdicts.

use serde::{Deserialize, Serialize};

use crate::linalg::Scalar;

/// One violated identity family. Only the first witness is kept; `count`
/// records how many instances of the family failed in total.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub condition: String,
    pub witness: Vec<usize>,
    #[serde(default)]
    pub left: Vec<String>,
    #[serde(default)]
    pub right: Vec<String>,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub ok: bool,
    pub failures: Vec<Failure>,
}

impl VerificationReport {
    pub fn passed() -> Self {
        Self { ok: true, failures: Vec::new() }
    }

    pub fn from_failures(failures: Vec<Failure>) -> Self {
        Self { ok: failures.is_empty(), failures }
    }

    /// Whether some failure carries the given condition tag.
    pub fn has(&self, condition: &str) -> bool {
        self.failures.iter().any(|f| f.condition == condition)
    }

    pub fn failure(&self, condition: &str) -> Option<&Failure> {
        self.failures.iter().find(|f| f.condition == condition)
    }

    pub fn conditions(&self) -> impl Iterator<Item = &str> {
        self.failures.iter().map(|f| f.condition.as_str())
    }

    /// Concatenates two reports, keeping the order of first appearance.
    pub fn merge(mut self, other: VerificationReport) -> Self {
        self.failures.extend(other.failures);
        self.ok = self.failures.is_empty();
        self
    }
}

#[derive(Default)]
pub(crate) struct ReportBuilder {
    failures: Vec<Failure>,
}

impl ReportBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    fn bump(&mut self, condition: &str) -> bool {
        if let Some(f) = self.failures.iter_mut().find(|f| f.condition == condition) {
            f.count += 1;
            true
        } else {
            false
        }
    }

    pub fn fail(&mut self, condition: &str, witness: &[usize], left: &[Scalar], right: &[Scalar]) {
        if !self.bump(condition) {
            self.failures.push(Failure {
                condition: condition.to_string(),
                witness: witness.to_vec(),
                left: left.iter().map(ToString::to_string).collect(),
                right: right.iter().map(ToString::to_string).collect(),
                count: 1,
            });
        }
    }

    /// Records a failure unless `left == right`.
    pub fn expect_eq(&mut self, condition: &str, witness: &[usize], left: &[Scalar], right: &[Scalar]) {
        if left != right {
            self.fail(condition, witness, left, right);
        }
    }

    pub fn fail_text(&mut self, condition: &str, witness: &[usize], left: Vec<String>, right: Vec<String>) {
        if !self.bump(condition) {
            self.failures.push(Failure {
                condition: condition.to_string(),
                witness: witness.to_vec(),
                left,
                right,
                count: 1,
            });
        }
    }

    pub fn finish(self) -> VerificationReport {
        VerificationReport::from_failures(self.failures)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;

    #[test]
    fn keeps_first_witness_and_counts() {
        let f = Field::Rationals;
        let mut b = ReportBuilder::new();
        b.expect_eq("x", &[0], &[f.one()], &[f.one()]);
        b.expect_eq("x", &[1], &[f.one()], &[f.zero()]);
        b.expect_eq("x", &[2], &[f.one()], &[f.zero()]);
        b.expect_eq("y", &[3], &[f.zero()], &[f.one()]);
        let r = b.finish();
        assert!(!r.ok);
        assert_eq!(r.failures.len(), 2);
        assert_eq!(r.failure("x").unwrap().witness, vec![1]);
        assert_eq!(r.failure("x").unwrap().count, 2);
        assert!(r.has("y"));
        let json = serde_json::to_string(&r).unwrap();
        let back: VerificationReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }
}

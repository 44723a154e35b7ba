//! Report records emitted by the verification routines.

use serde::{Deserialize, Serialize};

/// One numerical check: `{check, value, bound, slack, seed}`.
///
/// For inequalities `slack` is the signed distance to the bound (positive
/// when the inequality holds). Equalities store the absolute residual as
/// `value` with `bound = 0` and `slack = -residual`. A record holds when
/// `slack >= -tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check: String,
    pub value: f64,
    pub bound: f64,
    pub slack: f64,
    pub seed: Option<u64>,
    #[serde(skip)]
    pub tolerance: f64,
}

impl CheckRecord {
    /// `value ≤ bound`
    pub fn at_most(check: impl Into<String>, value: f64, bound: f64, tolerance: f64) -> Self {
        CheckRecord {
            check: check.into(),
            value,
            bound,
            slack: bound - value,
            seed: None,
            tolerance,
        }
    }

    /// `value ≥ bound`
    pub fn at_least(check: impl Into<String>, value: f64, bound: f64, tolerance: f64) -> Self {
        CheckRecord {
            slack: value - bound,
            ..Self::at_most(check, value, bound, tolerance)
        }
    }

    /// `lhs = rhs`
    pub fn equal(check: impl Into<String>, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let residual = (lhs - rhs).abs();
        CheckRecord {
            check: check.into(),
            value: residual,
            bound: 0.0,
            slack: -residual,
            seed: None,
            tolerance,
        }
    }

    pub fn with_seed(mut self, seed: Option<u64>) -> Self {
        self.seed = seed;
        self
    }

    pub fn holds(&self) -> bool {
        self.slack >= -self.tolerance
    }
}

/// Outcome of evaluating a state on a pentagon against the classical bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ViolationReport {
    pub scenario_id: String,
    pub value: f64,
    pub classical_bound: f64,
    pub violated: bool,
    pub witness: Option<String>,
}

impl ViolationReport {
    /// `violated` is derived: `value > classical_bound`.
    pub fn new(
        scenario_id: impl Into<String>,
        value: f64,
        classical_bound: f64,
        witness: Option<String>,
    ) -> Self {
        ViolationReport {
            scenario_id: scenario_id.into(),
            value,
            classical_bound,
            violated: value > classical_bound,
            witness,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slack_orientation() {
        assert!(CheckRecord::at_most("a", 1.0, 2.0, 0.0).holds());
        assert!(!CheckRecord::at_most("a", 2.1, 2.0, 1e-9).holds());
        assert!(CheckRecord::at_most("a", 2.0 + 1e-10, 2.0, 1e-9).holds());
        assert_eq!(CheckRecord::at_least("b", 3.0, 1.0, 0.0).slack, 2.0);
        let eq = CheckRecord::equal("c", 1.0, 1.0 + 1e-9, 1e-8);
        assert!(eq.holds() && eq.slack < 0.0);
    }

    #[test]
    fn record_json_fields() {
        let r = CheckRecord::at_most("theorem1", 1.5, 2.0, 1e-9).with_seed(Some(7));
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"check": "theorem1", "value": 1.5, "bound": 2.0, "slack": 0.5, "seed": 7})
        );
    }

    #[test]
    fn violation_flag_is_derived() {
        assert!(ViolationReport::new("x", 2.2, 2.0, None).violated);
        assert!(!ViolationReport::new("x", 2.0, 2.0, None).violated);
    }
}

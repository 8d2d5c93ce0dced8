//! Verdict and report value types.
//!
//! These are plain data carried between the harness stages and out to JSON;
//! all of them serialize with a stable field order.

use serde::Serialize;

use crate::expr::Complex;
use crate::geometry::SampleGrid;
use crate::theorem::ParamSet;

/// Outcome of a numerical subordination test.
///
/// Strict inequalities on an open disk cannot be decided at the boundary from
/// samples, so `Inconclusive` is a first-class answer and is never coerced to
/// either side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Holds,
    Fails,
    Inconclusive,
}

/// Three-valued result of `test_subordination`, with a witness on failure.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubordinationVerdict {
    pub outcome: Outcome,
    /// Disk point whose image escapes, present exactly when `outcome == Fails`.
    pub witness_z: Option<Complex>,
    /// The escaping image value.
    pub witness_w: Option<Complex>,
    pub detail: String,
}

impl SubordinationVerdict {
    pub fn holds(detail: impl Into<String>) -> Self {
        Self { outcome: Outcome::Holds, witness_z: None, witness_w: None, detail: detail.into() }
    }

    pub fn fails(witness_z: Complex, witness_w: Complex, detail: impl Into<String>) -> Self {
        Self {
            outcome: Outcome::Fails,
            witness_z: Some(witness_z),
            witness_w: Some(witness_w),
            detail: detail.into(),
        }
    }

    pub fn inconclusive(detail: impl Into<String>) -> Self {
        Self {
            outcome: Outcome::Inconclusive,
            witness_z: None,
            witness_w: None,
            detail: detail.into(),
        }
    }

    pub fn is_holds(&self) -> bool {
        self.outcome == Outcome::Holds
    }

    pub fn is_fails(&self) -> bool {
        self.outcome == Outcome::Fails
    }

    pub fn is_inconclusive(&self) -> bool {
        self.outcome == Outcome::Inconclusive
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// A named strict-inequality check over a sample grid.
///
/// `min_value` is the worst margin observed (headroom above the check's hard
/// floor), so the invariant `verdict == Pass ⇔ min_value > 0` holds by
/// construction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionReport {
    pub name: String,
    pub min_value: f64,
    pub argmin: Complex,
    pub verdict: Verdict,
    pub soft_flags: Vec<String>,
}

impl ConditionReport {
    pub fn new(
        name: impl Into<String>,
        min_value: f64,
        argmin: Complex,
        soft_flags: Vec<String>,
    ) -> Self {
        let verdict = if min_value > 0.0 { Verdict::Pass } else { Verdict::Fail };
        Self { name: name.into(), min_value, argmin, verdict, soft_flags }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

/// Result of one theorem harness run.
///
/// `consistent` is false exactly when the run contradicts the implication:
/// premise holds, every hypothesis passes, yet the conclusion fails.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremVerdict {
    pub premise: SubordinationVerdict,
    pub hypotheses: Vec<ConditionReport>,
    pub conclusion: SubordinationVerdict,
    pub consistent: bool,
}

impl TheoremVerdict {
    pub fn new(
        premise: SubordinationVerdict,
        hypotheses: Vec<ConditionReport>,
        conclusion: SubordinationVerdict,
    ) -> Self {
        let contradiction = premise.is_holds()
            && hypotheses.iter().all(ConditionReport::passed)
            && conclusion.is_fails();
        Self { premise, hypotheses, conclusion, consistent: !contradiction }
    }

    /// True when either sampled subordination came back undecided.
    pub fn is_inconclusive(&self) -> bool {
        self.premise.is_inconclusive() || self.conclusion.is_inconclusive()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub role: String,
    pub z: Complex,
    pub w: Complex,
}

/// JSON report for a theorem harness run: the verdict plus the context
/// needed to reproduce it.
#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub premise: SubordinationVerdict,
    pub hypotheses: Vec<ConditionReport>,
    pub conclusion: SubordinationVerdict,
    pub consistent: bool,
    pub witnesses: Vec<Witness>,
    pub grid: SampleGrid,
    pub params: ParamSet,
}

impl TheoremReport {
    pub fn new(verdict: TheoremVerdict, grid: SampleGrid, params: ParamSet) -> Self {
        let mut witnesses = Vec::new();
        for (role, v) in [("premise", &verdict.premise), ("conclusion", &verdict.conclusion)] {
            if let (Some(z), Some(w)) = (v.witness_z, v.witness_w) {
                witnesses.push(Witness { role: role.to_string(), z, w });
            }
        }
        Self {
            premise: verdict.premise,
            hypotheses: verdict.hypotheses,
            conclusion: verdict.conclusion,
            consistent: verdict.consistent,
            witnesses,
            grid,
            params,
        }
    }
}

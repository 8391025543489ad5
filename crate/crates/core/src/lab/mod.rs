//! Constructive checks of structural facts about g-ind norms.
//!
//! Each procedure builds explicit witnesses (vectors, matrices) and compares
//! a predicted value against one achieved by the engine. Comparisons always
//! pit a certified lower bound against a certified upper bound, so a pass is
//! never produced by an optimistic estimate.

mod algebra;
mod congruence;
mod extremal;
mod recovery;
mod transformed;
mod unitary;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::engine::gind;
use crate::error::Result;
use crate::norms::NormSpec;
use crate::numerics::{gaussian_matrix, Matrix, Seed, Vector};

pub use algebra::{
    algebra_norm_test, algebra_norm_test_with, min_algebra_scale, AlgebraVerdict, ScaleReport,
};
pub use congruence::{confirm_congruence, gi_congruent, CongruenceVerdict};
pub use extremal::extremal_ratio_witness;
pub use recovery::{recover_vector_norms, Recovery};
pub use transformed::transformed_gind_check;
pub use unitary::unitary_invariance_probe;

/// Which structural fact a report checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem {
    ClassicalInduced,
    MaxNormDefect,
    DualVector,
    ColumnOperators,
    NormRecovery,
    UnitaryInvariance,
    ExtremalRatio,
    Monotonicity,
    GiCongruence,
    NonMinimality,
    AlgebraNorm,
    MinAlgebraScale,
    ScaledPair,
    TransformedNorm,
}

impl Theorem {
    pub fn name(self) -> &'static str {
        match self {
            Theorem::ClassicalInduced => "classical_induced",
            Theorem::MaxNormDefect => "max_norm_defect",
            Theorem::DualVector => "dual_vector",
            Theorem::ColumnOperators => "column_operators",
            Theorem::NormRecovery => "norm_recovery",
            Theorem::UnitaryInvariance => "unitary_invariance",
            Theorem::ExtremalRatio => "extremal_ratio",
            Theorem::Monotonicity => "monotonicity",
            Theorem::GiCongruence => "gi_congruence",
            Theorem::NonMinimality => "non_minimality",
            Theorem::AlgebraNorm => "algebra_norm",
            Theorem::MinAlgebraScale => "min_algebra_scale",
            Theorem::ScaledPair => "scaled_pair",
            Theorem::TransformedNorm => "transformed_norm",
        }
    }
}

/// How `achieved` is compared with `predicted`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `|achieved − predicted| ≤ tol·max(|predicted|, 1)`.
    Equal,
    /// `achieved ≤ predicted + tol·max(|predicted|, 1)`.
    AtMost,
    /// `achieved ≥ predicted − tol·max(|predicted|, 1)`.
    AtLeast,
    /// Nothing was sampled; the headline holds trivially.
    Vacuous,
}

impl Relation {
    pub fn holds(self, achieved: f64, predicted: f64, tol: f64) -> bool {
        let slack = tol * predicted.abs().max(1.0);
        match self {
            Relation::Equal => (achieved - predicted).abs() <= slack,
            Relation::AtMost => achieved <= predicted + slack,
            Relation::AtLeast => achieved >= predicted - slack,
            Relation::Vacuous => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WitnessValue {
    Vector(Vector),
    Matrix(Matrix),
}

/// What a witness is claimed to evaluate to. Norms are recorded by their
/// display form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Claim {
    /// `norm(vector) = value`.
    Norm { norm: String, value: f64 },
    /// Certified bracket `lower ≤ ‖matrix‖_{from,to} ≤ upper`.
    Gind {
        from: String,
        to: String,
        lower: f64,
        upper: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub name: String,
    pub value: WitnessValue,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claim: Option<Claim>,
}

impl Witness {
    pub fn vector(name: &str, v: Vector) -> Self {
        Witness {
            name: name.into(),
            value: WitnessValue::Vector(v),
            claim: None,
        }
    }

    pub fn matrix(name: &str, m: Matrix) -> Self {
        Witness {
            name: name.into(),
            value: WitnessValue::Matrix(m),
            claim: None,
        }
    }

    pub fn with_norm(mut self, norm: &NormSpec) -> Result<Self> {
        if let WitnessValue::Vector(v) = &self.value {
            self.claim = Some(Claim::Norm {
                norm: norm.to_string(),
                value: norm.eval(v)?,
            });
        }
        Ok(self)
    }

    pub fn with_gind(mut self, d: &NormSpec, c: &NormSpec, seed: Seed) -> Result<Self> {
        if let WitnessValue::Matrix(m) = &self.value {
            let g = gind(m, d, c, seed)?;
            self.claim = Some(Claim::Gind {
                from: d.to_string(),
                to: c.to_string(),
                lower: g.lower,
                upper: g.upper,
            });
        }
        Ok(self)
    }
}

/// A secondary pass/fail condition. `value` must satisfy `relation` against
/// `bound` with the check's own slack.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub bound: f64,
    pub relation: Relation,
    pub slack: f64,
    pub passed: bool,
}

impl Check {
    pub fn new(name: &str, value: f64, relation: Relation, bound: f64, slack: f64) -> Self {
        Check {
            name: name.into(),
            value,
            bound,
            relation,
            slack,
            passed: relation.holds(value, bound, slack),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub theorem: Theorem,
    pub inputs: BTreeMap<String, serde_json::Value>,
    pub predicted: f64,
    pub achieved: f64,
    pub relation: Relation,
    pub witnesses: Vec<Witness>,
    pub checks: Vec<Check>,
    pub tolerance: f64,
    pub seed: Seed,
    pub passed: bool,
}

impl WitnessReport {
    pub fn new(theorem: Theorem, seed: Seed, tolerance: f64) -> Self {
        WitnessReport {
            theorem,
            inputs: BTreeMap::new(),
            predicted: 0.0,
            achieved: 0.0,
            relation: Relation::Equal,
            witnesses: Vec::new(),
            checks: Vec::new(),
            tolerance,
            seed,
            passed: false,
        }
    }

    pub fn input(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.inputs.insert(key.into(), value.into());
        self
    }

    pub fn headline(mut self, predicted: f64, achieved: f64, relation: Relation) -> Self {
        self.predicted = predicted;
        self.achieved = achieved;
        self.relation = relation;
        self
    }

    pub fn witness(mut self, w: Witness) -> Self {
        self.witnesses.push(w);
        self
    }

    pub fn check(mut self, c: Check) -> Self {
        self.checks.push(c);
        self
    }

    pub fn headline_holds(&self) -> bool {
        self.achieved.is_finite()
            && self.predicted.is_finite()
            && self.relation.holds(self.achieved, self.predicted, self.tolerance)
    }

    /// Recomputes `passed` from the headline and every check.
    pub fn finish(mut self) -> Self {
        self.passed = self.headline_holds() && self.checks.iter().all(|c| c.passed);
        self
    }

    /// Replaces the headline tolerance and re-derives `passed`. Checks keep
    /// their own slack.
    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self.finish()
    }
}

/// Seeded complex Gaussian test matrix number `k` of a sample stream.
pub(crate) fn sample_matrix(n: usize, seed: Seed, k: u64) -> Matrix {
    gaussian_matrix(n, false, &mut seed.derive(k).rng())
}

pub(crate) fn spec_names(specs: &[(&str, &NormSpec)]) -> Vec<(String, serde_json::Value)> {
    specs
        .iter()
        .map(|(k, s)| (k.to_string(), serde_json::Value::String(s.to_string())))
        .collect()
}

pub(crate) fn with_specs(mut r: WitnessReport, specs: &[(&str, &NormSpec)]) -> WitnessReport {
    for (k, v) in spec_names(specs) {
        r.inputs.insert(k, v);
    }
    r
}

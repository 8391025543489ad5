//! Deciding whether two norm pairs induce proportional g-ind norms.
//!
//! `(d₁, c₁)` and `(d₂, c₂)` induce `‖·‖₁ = γ‖·‖₂` exactly when `d₁ = α d₂`
//! and `c₁ = β c₂` for positive constants, in which case `γ = β/α`. A ratio
//! `‖x‖_a/‖x‖_b` is constant iff `R(a, b)·R(b, a) = 1`.

use serde::{Deserialize, Serialize};

use super::{sample_matrix, with_specs, Relation, Theorem, Witness, WitnessReport};
use crate::engine::{gind, ratio, GindResult};
use crate::error::{Error, Result};
use crate::norms::NormSpec;
use crate::numerics::{Seed, Vector};

const CONSTANT_SLACK: f64 = 1e-8;
const SEPARATION: f64 = 1e-6;
pub const CONGRUENCE_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CongruenceVerdict {
    pub congruent: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    /// `d₁ = α d₂`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    /// `c₁ = β c₂`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    /// Two vectors whose ratios under the non-proportional component differ.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub separating_vectors: Option<(Vector, Vector)>,
    /// `"domain"` or `"codomain"`: the component the vectors separate.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub component: Option<String>,
}

struct Proportion {
    forward: GindResult,
    backward: GindResult,
}

impl Proportion {
    fn new(a: &NormSpec, b: &NormSpec, n: usize, seed: Seed) -> Result<Self> {
        Ok(Proportion {
            forward: ratio(a, b, n, seed)?,
            backward: ratio(b, a, n, seed)?,
        })
    }

    fn constant(&self) -> bool {
        self.forward.upper * self.backward.upper <= 1.0 + CONSTANT_SLACK
    }

    /// Probe vectors at the max and at the min of `‖x‖_a/‖x‖_b`, if their
    /// measured ratios are provably apart.
    fn separate(&self, a: &NormSpec, b: &NormSpec) -> Result<Option<(Vector, Vector)>> {
        let hi = &self.forward.witness;
        let lo = &self.backward.witness;
        let r_hi = a.eval(hi)? / b.eval(hi)?;
        let r_lo = a.eval(lo)? / b.eval(lo)?;
        if r_hi > r_lo * (1.0 + SEPARATION) {
            Ok(Some((hi.clone(), lo.clone())))
        } else {
            Ok(None)
        }
    }
}

pub fn gi_congruent(
    p1: (&NormSpec, &NormSpec),
    p2: (&NormSpec, &NormSpec),
    n: usize,
    seed: Seed,
) -> Result<CongruenceVerdict> {
    for s in [p1.0, p1.1, p2.0, p2.1] {
        s.check_dim(n)?;
    }
    let a = Proportion::new(p1.0, p2.0, n, seed)?;
    let b = Proportion::new(p1.1, p2.1, n, seed)?;
    if a.constant() && b.constant() {
        let alpha = a.forward.upper;
        let beta = b.forward.upper;
        return Ok(CongruenceVerdict {
            congruent: true,
            gamma: Some(beta / alpha),
            alpha: Some(alpha),
            beta: Some(beta),
            separating_vectors: None,
            component: None,
        });
    }
    let candidates = [
        ("domain", &a, p1.0, p2.0),
        ("codomain", &b, p1.1, p2.1),
    ];
    for (component, prop, x, y) in candidates {
        if prop.constant() {
            continue;
        }
        if let Some(pair) = prop.separate(x, y)? {
            return Ok(CongruenceVerdict {
                congruent: false,
                gamma: None,
                alpha: None,
                beta: None,
                separating_vectors: Some(pair),
                component: Some(component.into()),
            });
        }
    }
    Err(Error::InvalidArgument(
        "congruence undecided: ratio bounds neither prove constancy nor separate".into(),
    ))
}

/// Confirms a congruent verdict on `trials` random matrices: the largest
/// conservative relative gap between `‖A‖_{p1}` and `γ‖A‖_{p2}` must stay
/// within [`CONGRUENCE_TOLERANCE`]. A negative verdict is confirmed by its
/// separating vectors instead.
pub fn confirm_congruence(
    verdict: &CongruenceVerdict,
    p1: (&NormSpec, &NormSpec),
    p2: (&NormSpec, &NormSpec),
    n: usize,
    trials: usize,
    seed: Seed,
) -> Result<WitnessReport> {
    let mut report = WitnessReport::new(Theorem::GiCongruence, seed, CONGRUENCE_TOLERANCE)
        .input("n", n)
        .input("trials", trials)
        .input("congruent", verdict.congruent);
    report = with_specs(report, &[("d1", p1.0), ("c1", p1.1), ("d2", p2.0), ("c2", p2.1)]);
    if let Some(gamma) = verdict.gamma {
        let mut worst = 0.0f64;
        for k in 0..trials as u64 {
            let a = sample_matrix(n, seed, k);
            let g1 = gind(&a, p1.0, p1.1, seed)?;
            let g2 = gind(&a, p2.0, p2.1, seed)?;
            if g1.lower > 0.0 {
                let gap = (g1.upper - gamma * g2.lower).max(gamma * g2.upper - g1.lower);
                worst = worst.max(gap / g1.lower);
            }
        }
        report = report.input("gamma", gamma).headline(0.0, worst, Relation::Equal);
    } else if let Some((x, y)) = &verdict.separating_vectors {
        let (a, b) = if verdict.component.as_deref() == Some("codomain") {
            (p1.1, p2.1)
        } else {
            (p1.0, p2.0)
        };
        let rx = a.eval(x)? / b.eval(x)?;
        let ry = a.eval(y)? / b.eval(y)?;
        report = report
            .headline(1.0 + SEPARATION, rx / ry, Relation::AtLeast)
            .witness(Witness::vector("x", x.clone()).with_norm(a)?)
            .witness(Witness::vector("y", y.clone()).with_norm(a)?);
        // AtLeast with tolerance slack would accept ratios just below the
        // separation threshold; the verdict already required strict excess.
        report.tolerance = 0.0;
    }
    Ok(report.finish())
}

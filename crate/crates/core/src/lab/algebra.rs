//! When is `‖·‖_{d,c}` submultiplicative, and by how much must it be scaled
//! to become so.
//!
//! `‖·‖_{d,c}` is an algebra norm exactly when `R(d, c) ≤ 1`. Otherwise,
//! with `x` a maximizer of `‖x‖_d/‖x‖_c` and `x₀` its `d`-dual vector, the
//! rank-one `B = x x₀ᵀ/‖x‖_c` has `‖B‖ = 1` and `‖B²‖ = R`.

use serde::Serialize;

use super::{sample_matrix, with_specs, Check, Relation, Theorem, Witness, WitnessReport};
use crate::engine::{gind, ratio};
use crate::error::{Error, Result};
use crate::norms::{NormSpec, Transform};
use crate::numerics::{Matrix, Seed, C64};

pub const ALGEBRA_TOLERANCE: f64 = 1e-9;
const ALGEBRA_SAMPLES: usize = 1000;
const SCALE_SAMPLES: usize = 500;
const SUBMULT_SLACK: f64 = 1e-8;
const DEGENERATE: f64 = 1e-12;
const SHRINK: f64 = 0.9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlgebraVerdict {
    pub is_algebra: bool,
    /// `B = x x₀ᵀ/‖x‖_c` when the verdict is negative.
    pub counterexample: Option<Matrix>,
    pub report: WitnessReport,
}

pub fn algebra_norm_test(d: &NormSpec, c: &NormSpec, n: usize, seed: Seed) -> Result<AlgebraVerdict> {
    algebra_norm_test_with(d, c, n, seed, ALGEBRA_SAMPLES)
}

/// As [`algebra_norm_test`] with a chosen number of submultiplicativity
/// samples for the positive branch.
pub fn algebra_norm_test_with(
    d: &NormSpec,
    c: &NormSpec,
    n: usize,
    seed: Seed,
    samples: usize,
) -> Result<AlgebraVerdict> {
    d.check_dim(n)?;
    c.check_dim(n)?;
    let r = ratio(d, c, n, seed)?;
    let base = WitnessReport::new(Theorem::AlgebraNorm, seed, ALGEBRA_TOLERANCE)
        .input("n", n)
        .input("samples", samples);
    let base = with_specs(base, &[("d", d), ("c", c)]);

    if r.upper <= 1.0 + ALGEBRA_TOLERANCE {
        let worst = sampled_defect(d, c, 1.0, n, seed, samples)?;
        let report = base
            .input("verdict", true)
            .headline(r.upper, r.lower, Relation::Equal)
            .check(Check::new("sampled_defect", worst, Relation::AtMost, 1.0, SUBMULT_SLACK))
            .finish();
        return Ok(AlgebraVerdict {
            is_algebra: true,
            counterexample: None,
            report,
        });
    }

    let b = counterexample(d, c, &r.witness)?;
    let g1 = gind(&b, d, c, seed)?;
    let g2 = gind(&b.mul(&b)?, d, c, seed)?;
    let achieved = g2.lower / (g1.upper * g1.upper);
    let report = base
        .input("verdict", false)
        .headline(r.upper, achieved, Relation::Equal)
        .witness(Witness::vector("x", r.witness.clone()).with_norm(d)?)
        .witness(Witness::matrix("B", b.clone()).with_gind(d, c, seed)?)
        .witness(Witness::matrix("B2", b.mul(&b)?).with_gind(d, c, seed)?)
        .check(Check::new("norm_B_lower", g1.lower, Relation::Equal, 1.0, ALGEBRA_TOLERANCE))
        .check(Check::new("norm_B_upper", g1.upper, Relation::Equal, 1.0, ALGEBRA_TOLERANCE))
        .check(Check::new("norm_B2", g2.lower, Relation::Equal, r.lower, ALGEBRA_TOLERANCE))
        .check(Check::new("violation", g2.lower, Relation::AtLeast, g1.upper * g1.upper * (1.0 + ALGEBRA_TOLERANCE), 0.0))
        .finish();
    Ok(AlgebraVerdict {
        is_algebra: false,
        counterexample: Some(b),
        report,
    })
}

fn counterexample(d: &NormSpec, c: &NormSpec, x: &crate::numerics::Vector) -> Result<Matrix> {
    let cx = c.eval(x)?;
    if cx < DEGENERATE || x.max_abs() < DEGENERATE {
        return Err(Error::DegenerateWitness(format!("maximizer of R({d},{c}) vanishes")));
    }
    let x0 = d.dual_vector(x)?.y0;
    Ok(Matrix::outer(x, &x0).scale_real(1.0 / cx))
}

/// Largest `lower(λ‖AB‖)/(upper(λ‖A‖)·upper(λ‖B‖))` over seeded samples.
fn sampled_defect(
    d: &NormSpec,
    c: &NormSpec,
    lambda: f64,
    n: usize,
    seed: Seed,
    samples: usize,
) -> Result<f64> {
    let mut worst = 0.0f64;
    for k in 0..samples as u64 {
        let a = sample_matrix(n, seed, 2 * k);
        let b = sample_matrix(n, seed, 2 * k + 1);
        let ab = gind(&a.mul(&b)?, d, c, seed)?.lower;
        let na = gind(&a, d, c, seed)?.upper;
        let nb = gind(&b, d, c, seed)?.upper;
        if na > 0.0 && nb > 0.0 {
            worst = worst.max(ab / (lambda * na * nb));
        }
    }
    Ok(worst)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScaleReport {
    pub lambda: f64,
    pub report: WitnessReport,
}

/// Smallest `λ` making `λ‖·‖_{d,c}` submultiplicative, namely `R(d, c)`.
///
/// Self-checks: the `λ`-scaled norm survives sampled submultiplicativity,
/// and when `λ > 1/0.9` the scale `0.9λ` is broken by the counterexample of
/// [`algebra_norm_test`].
pub fn min_algebra_scale(d: &NormSpec, c: &NormSpec, n: usize, seed: Seed) -> Result<ScaleReport> {
    d.check_dim(n)?;
    c.check_dim(n)?;
    let r = ratio(d, c, n, seed)?;
    let lambda = r.upper;

    // λ‖A‖_{d,c} is the g-ind norm into the codomain scaled by λ.
    let scaled = NormSpec::transformed(Transform::scale(C64::new(lambda, 0.0))?, c.clone())?;
    let worst = sampled_defect(d, &scaled, 1.0, n, seed, SCALE_SAMPLES)?;

    let mut report = WitnessReport::new(Theorem::MinAlgebraScale, seed, ALGEBRA_TOLERANCE)
        .input("n", n)
        .headline(lambda, r.lower, Relation::Equal)
        .witness(Witness::vector("x", r.witness.clone()).with_norm(d)?)
        .check(Check::new("sampled_defect", worst, Relation::AtMost, 1.0, SUBMULT_SLACK));
    if lambda * SHRINK > 1.0 {
        let b = counterexample(d, c, &r.witness)?;
        let below = scale_violation(d, c, &b, SHRINK * lambda, seed)?;
        report = report
            .witness(Witness::matrix("B", b))
            .check(Check::new("shrunk_violation", below, Relation::AtLeast, 1.0 + ALGEBRA_TOLERANCE, 0.0));
    }
    let report = with_specs(report, &[("d", d), ("c", c)]).finish();
    Ok(ScaleReport { lambda, report })
}

/// Conservative `μ‖B²‖/(μ‖B‖)²`: above one means `μ‖·‖_{d,c}` is not
/// submultiplicative.
pub(crate) fn scale_violation(
    d: &NormSpec,
    c: &NormSpec,
    b: &Matrix,
    mu: f64,
    seed: Seed,
) -> Result<f64> {
    let g1 = gind(b, d, c, seed)?.upper;
    let g2 = gind(&b.mul(b)?, d, c, seed)?.lower;
    Ok(g2 / (mu * g1 * g1))
}

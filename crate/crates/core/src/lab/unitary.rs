//! Sampling `‖UAV‖_{d,c}` against `‖A‖_{d,c}` for unitaries `U, V`.

use super::{sample_matrix, with_specs, Check, Relation, Theorem, Witness, WitnessReport};
use crate::engine::gind;
use crate::error::Result;
use crate::norms::NormSpec;
use crate::numerics::{random_unitary, Matrix, Seed, C64};

pub const INVARIANCE_TOLERANCE: f64 = 1e-6;
/// Smallest deviation accepted as a violation for non-invariant pairs.
pub const DETECTION_THRESHOLD: f64 = 1e-3;

/// `n × n` discrete Fourier matrix, unitary.
fn dft(n: usize) -> Matrix {
    let scale = 1.0 / (n as f64).sqrt();
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let angle = -std::f64::consts::TAU * (i * j) as f64 / n as f64;
            m.set(i, j, C64::from_polar(scale, angle));
        }
    }
    m
}

/// Trial 0 is the structured `(A, U, V) = (E₁₁, DFT, I)`; later trials draw
/// `U, V` from [`random_unitary`] and `A` Gaussian.
///
/// For pairs whose norms are both unitarily invariant the report passes when
/// the largest conservative deviation stays below [`INVARIANCE_TOLERANCE`].
/// For other pairs it passes when a proven deviation of at least
/// [`DETECTION_THRESHOLD`] is found.
pub fn unitary_invariance_probe(
    d: &NormSpec,
    c: &NormSpec,
    n: usize,
    trials: usize,
    seed: Seed,
) -> Result<WitnessReport> {
    d.check_dim(n)?;
    c.check_dim(n)?;
    let invariant = d.is_unitarily_invariant(n)? && c.is_unitarily_invariant(n)?;

    // Upper-side deviation bounds the true deviation from above; proven
    // deviation bounds it from below.
    let mut upper_dev = 0.0f64;
    let mut proven: (f64, Option<(Matrix, Matrix, Matrix)>) = (0.0, None);
    for t in 0..trials {
        let (a, u, v) = if t == 0 {
            let mut e11 = Matrix::zeros(n, n);
            e11.set(0, 0, C64::new(1.0, 0.0));
            (e11, dft(n), Matrix::identity(n))
        } else {
            let k = t as u64;
            (
                sample_matrix(n, seed, 3 * k),
                random_unitary(n, seed.derive(3 * k + 1))?,
                random_unitary(n, seed.derive(3 * k + 2))?,
            )
        };
        let uav = u.mul(&a)?.mul(&v)?;
        let ga = gind(&a, d, c, seed)?;
        let gu = gind(&uav, d, c, seed)?;
        if ga.lower <= 0.0 {
            continue;
        }
        let hi = (gu.upper - ga.lower).max(ga.upper - gu.lower) / ga.lower;
        let lo = (gu.lower - ga.upper).max(ga.lower - gu.upper) / ga.upper;
        upper_dev = upper_dev.max(hi);
        if lo > proven.0 {
            proven = (lo, Some((a, u, v)));
        }
    }

    let mut report = WitnessReport::new(Theorem::UnitaryInvariance, seed, INVARIANCE_TOLERANCE)
        .input("n", n)
        .input("trials", trials)
        .input("invariant_candidates", invariant);
    report = if trials == 0 {
        report.headline(0.0, 0.0, Relation::Vacuous)
    } else if invariant {
        report.headline(0.0, upper_dev, Relation::Equal)
    } else {
        report
            .headline(DETECTION_THRESHOLD, proven.0, Relation::AtLeast)
            .check(Check::new("violation_found", proven.0, Relation::AtLeast, DETECTION_THRESHOLD, 0.0))
    };
    if let Some((a, u, v)) = proven.1 {
        report = report
            .witness(Witness::matrix("A", a).with_gind(d, c, seed)?)
            .witness(Witness::matrix("U", u))
            .witness(Witness::matrix("V", v));
    }
    Ok(with_specs(report, &[("d", d), ("c", c)]).finish())
}

//! Recovering a vector-norm pair from an algebra norm on M_n.
//!
//! For an algebra norm `N`, put `ν₁(x) = max{N(C_{Ax}) : N(A) = 1}`,
//! `λ⁻¹ = max{|Σxᵢ| : ν₁(x) = 1}` and `ν₂(x) = λN(C_x)`. Then `N` coincides
//! with the g-ind norm `‖·‖_{ν₁,ν₂}` on matrices with `N(A) = N(A⁻¹) = 1`.
//! Both maxima are taken over finite seeded samples here.

use rand::seq::SliceRandom;

use super::{Relation, Theorem, Witness, WitnessReport};
use crate::engine::{column_sum_operator, MatrixNorm, MatrixNormKind};
use crate::error::{Error, Result};
use crate::numerics::{
    gaussian_matrix, gaussian_vector, invert, random_unitary, Matrix, Seed, Vector, C64,
};

pub const RECOVERY_TOLERANCE: f64 = 0.05;
pub const MIN_BUDGET: usize = 100;
const LAMBDA_PROBES: usize = 64;
const NORM_PROBES: usize = 16;
const TEST_MATRICES: usize = 20;
const TEST_SEARCH: usize = 200;
const UNIT_SLACK: f64 = 1e-6;

/// Sampled evaluators `ν₁`, `ν₂` for one oracle.
pub struct Recovery {
    pub oracle: MatrixNorm,
    /// Matrices of oracle norm one over which `ν₁` maximizes.
    pub candidates: Vec<Matrix>,
    pub lambda: f64,
    pub report: WitnessReport,
    seed: Seed,
}

impl Recovery {
    pub fn nu1_eval(&self, x: &Vector) -> Result<f64> {
        let mut best = 0.0f64;
        for a in &self.candidates {
            let v = self
                .oracle
                .eval(&column_sum_operator(&a.mul_vec(x)?), self.seed)?;
            best = best.max(v);
        }
        Ok(best)
    }

    pub fn nu2_eval(&self, x: &Vector) -> Result<f64> {
        Ok(self.lambda * self.oracle.eval(&column_sum_operator(x), self.seed)?)
    }

    /// Sampled `max ν₂(Au)/ν₁(u)` over the given probes.
    pub fn reconstructed_norm(&self, a: &Matrix, probes: &[(Vector, f64)]) -> Result<f64> {
        let mut best = 0.0f64;
        for (u, nu1) in probes {
            if *nu1 > 0.0 {
                best = best.max(self.nu2_eval(&a.mul_vec(u)?)? / nu1);
            }
        }
        Ok(best)
    }
}

/// Random permutation matrix with unimodular entries.
fn phase_permutation(n: usize, rng: &mut crate::numerics::Rng) -> Matrix {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut m = Matrix::zeros(n, n);
    for (i, &j) in perm.iter().enumerate() {
        let angle = rand::Rng::gen_range(rng, 0.0..std::f64::consts::TAU);
        m.set(i, j, C64::from_polar(1.0, angle));
    }
    m
}

fn candidate(n: usize, k: usize, seed: Seed) -> Result<Matrix> {
    let stream = seed.derive(k as u64);
    let mut rng = stream.rng();
    Ok(match k % 4 {
        0 => random_unitary(n, stream)?,
        1 => gaussian_matrix(n, false, &mut rng),
        2 => Matrix::outer(
            &gaussian_vector(n, false, &mut rng),
            &gaussian_vector(n, false, &mut rng),
        ),
        _ => phase_permutation(n, &mut rng),
    })
}

fn probes(n: usize, count: usize, seed: Seed) -> Result<Vec<Vector>> {
    let mut out = vec![Vector::ones(n)];
    for j in 0..n {
        out.push(Vector::basis(n, j)?);
    }
    let mut rng = seed.rng();
    out.extend((0..count).map(|_| gaussian_vector(n, false, &mut rng)));
    Ok(out)
}

/// Samples `ν₁`, `λ` and `ν₂` for `oracle` from `budget` candidate matrices,
/// then checks the reconstruction on matrices with `N(A) = N(A⁻¹) = 1`.
/// For the spectral oracle those are random unitaries; otherwise unitaries
/// and phase permutations are searched and kept when both norms are one
/// within `1e-6`. If none qualify the check is reported as vacuous.
pub fn recover_vector_norms(
    n: usize,
    oracle: MatrixNorm,
    budget: usize,
    seed: Seed,
) -> Result<Recovery> {
    if n == 0 {
        return Err(Error::EmptyDimension);
    }
    if budget < MIN_BUDGET {
        return Err(Error::BudgetTooSmall {
            budget,
            minimum: MIN_BUDGET,
        });
    }
    let inner = seed.derive(u64::MAX);
    let mut candidates = vec![Matrix::identity(n)];
    for k in 1..budget {
        let a = candidate(n, k, seed.derive(1))?;
        let norm = oracle.eval(&a, inner)?;
        if norm > 0.0 && norm.is_finite() {
            candidates.push(a.scale_real(1.0 / norm));
        }
    }
    // The identity is not guaranteed to have oracle norm one.
    let id_norm = oracle.eval(&candidates[0], inner)?;
    candidates[0] = candidates[0].scale_real(1.0 / id_norm);

    let mut rec = Recovery {
        oracle,
        candidates,
        lambda: 1.0,
        report: WitnessReport::new(Theorem::NormRecovery, seed, RECOVERY_TOLERANCE),
        seed: inner,
    };

    let mut inv_lambda = 0.0f64;
    for x in probes(n, LAMBDA_PROBES, seed.derive(2))? {
        let nu1 = rec.nu1_eval(&x)?;
        if nu1 > 0.0 {
            let sum: C64 = x.iter().sum();
            inv_lambda = inv_lambda.max(sum.norm() / nu1);
        }
    }
    rec.lambda = 1.0 / inv_lambda;

    let tests = test_matrices(&rec.oracle, n, seed.derive(3), inner)?;
    let probe_set: Vec<(Vector, f64)> = probes(n, NORM_PROBES, seed.derive(4))?
        .into_iter()
        .map(|u| {
            let v = rec.nu1_eval(&u)?;
            Ok((u, v))
        })
        .collect::<Result<_>>()?;

    let mut worst: Option<(f64, Matrix)> = None;
    for a in &tests {
        let value = rec.reconstructed_norm(a, &probe_set)?;
        if worst.as_ref().is_none_or(|(w, _)| (value - 1.0).abs() > (w - 1.0).abs()) {
            worst = Some((value, a.clone()));
        }
    }

    let mut report = WitnessReport::new(Theorem::NormRecovery, seed, RECOVERY_TOLERANCE)
        .input("n", n)
        .input("oracle", rec.oracle.label())
        .input("budget", budget)
        .input("candidates", rec.candidates.len())
        .input("lambda", rec.lambda)
        .input("test_matrices", tests.len());
    report = match worst {
        Some((value, a)) => report
            .headline(1.0, value, Relation::Equal)
            .witness(Witness::matrix("A", a)),
        None => report.headline(1.0, 1.0, Relation::Vacuous),
    };
    rec.report = report.finish();
    Ok(rec)
}

fn test_matrices(oracle: &MatrixNorm, n: usize, seed: Seed, inner: Seed) -> Result<Vec<Matrix>> {
    let spectral = matches!(oracle, MatrixNorm::Classical(MatrixNormKind::S));
    let mut out = Vec::new();
    let mut rng = seed.rng();
    for k in 0..TEST_SEARCH {
        if out.len() == TEST_MATRICES {
            break;
        }
        let a = if spectral || k % 2 == 0 {
            random_unitary(n, seed.derive(k as u64))?
        } else {
            phase_permutation(n, &mut rng)
        };
        let norm = oracle.eval(&a, inner)?;
        if norm <= 0.0 {
            continue;
        }
        let a = a.scale_real(1.0 / norm);
        let inv = oracle.eval(&invert(&a)?, inner)?;
        if (inv - 1.0).abs() <= UNIT_SLACK {
            out.push(a);
        }
    }
    Ok(out)
}

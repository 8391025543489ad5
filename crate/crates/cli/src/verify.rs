//! The `verify-all` suite: every lab check over one fixed family of norms,
//! `{ℓ1, ℓ2, ℓ∞, lp:3, scale:2*l2, lin:diag(1..n)*l1}`.

use gind_core::engine::{
    classical_norms, column_operator, column_sum_operator, gind, predicted_column_norms, ratio,
    submult_defect, MatrixNorm, MatrixNormKind,
};
use gind_core::lab::{
    algebra_norm_test_with, confirm_congruence, extremal_ratio_witness, gi_congruent,
    min_algebra_scale, recover_vector_norms, transformed_gind_check, unitary_invariance_probe,
    Check, Relation, Theorem, Witness, WitnessReport,
};
use gind_core::norms::NormSpec;
use gind_core::numerics::{gaussian_matrix, gaussian_vector, Matrix, Seed, Vector, C64};
use gind_core::Result;
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const MIN_ORDER: usize = 2;
pub const MAX_ORDER: usize = 6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Suite {
    pub n: usize,
    pub seed: Seed,
    pub passed: bool,
    /// Distinct theorem tags covered, in report order.
    pub tags: Vec<String>,
    pub reports: Vec<WitnessReport>,
}

pub fn family(n: usize) -> Result<Vec<NormSpec>> {
    let weights: Vec<f64> = (1..=n).map(|i| i as f64).collect();
    Ok(vec![
        NormSpec::l1(),
        NormSpec::l2(),
        NormSpec::linf(),
        NormSpec::lp(3.0)?,
        NormSpec::scaled(2.0, NormSpec::l2())?,
        NormSpec::linear(Matrix::diag_real(&weights), NormSpec::l1())?,
    ])
}

/// Members whose ratios and rank-one norms all take exact paths.
fn exact_family() -> Result<Vec<NormSpec>> {
    Ok(vec![
        NormSpec::l1(),
        NormSpec::l2(),
        NormSpec::linf(),
        NormSpec::scaled(2.0, NormSpec::l2())?,
    ])
}

pub fn verify_all(n: usize, seed: Seed, tol: Option<f64>) -> std::result::Result<Suite, CliError> {
    if !(MIN_ORDER..=MAX_ORDER).contains(&n) {
        return Err(CliError::Input(format!(
            "verify-all supports {MIN_ORDER} <= n <= {MAX_ORDER}, got {n}"
        )));
    }
    let mut reports = run_all(n, seed)?;
    if let Some(t) = tol {
        reports = reports.into_iter().map(|r| r.with_tolerance(t)).collect();
    }
    let mut tags: Vec<String> = Vec::new();
    for r in &reports {
        let name = r.theorem.name().to_string();
        if !tags.contains(&name) {
            tags.push(name);
        }
    }
    Ok(Suite {
        n,
        seed,
        passed: reports.iter().all(|r| r.passed),
        tags,
        reports,
    })
}

fn run_all(n: usize, seed: Seed) -> Result<Vec<WitnessReport>> {
    let f = family(n)?;
    let (l1, l2, linf, lp3) = (&f[0], &f[1], &f[2], &f[3]);
    let mut out = vec![
        classical(n, seed.derive(1))?,
        max_norm_defect(n, seed.derive(2))?,
        dual_vectors(&f, n, seed.derive(3))?,
        column_operators(&f, n, seed.derive(4))?,
        recover_vector_norms(n, MatrixNorm::Classical(MatrixNormKind::S), 500, seed.derive(5))?.report,
        unitary_invariance_probe(l2, l2, n, 30, seed.derive(6))?,
        unitary_invariance_probe(l1, l1, n, 30, seed.derive(7))?,
        extremal_ratio_witness(linf, l1, l2, l2, n, seed.derive(8))?,
    ];
    let exact = exact_family()?;
    for k in 0..3 {
        let pick: Vec<usize> = (0..4)
            .map(|i| pick_index(seed.derive(9).derive(4 * k + i), exact.len()))
            .collect();
        let [a, b, c, d] = [&exact[pick[0]], &exact[pick[1]], &exact[pick[2]], &exact[pick[3]]];
        out.push(extremal_ratio_witness(a, b, c, d, n, seed.derive(10 + k))?);
    }
    out.push(monotonicity(&exact, n, seed.derive(13))?);

    let three = NormSpec::scaled(3.0, l2.clone())?;
    let five = NormSpec::scaled(5.0, l2.clone())?;
    out.push(congruence((l2, l2), (&three, &five), n, seed.derive(14))?);
    let two_l1 = NormSpec::scaled(2.0, l1.clone())?;
    let three_lp3 = NormSpec::scaled(3.0, lp3.clone())?;
    out.push(congruence((l1, lp3), (&two_l1, &three_lp3), n, seed.derive(15))?);
    out.push(congruence((l1, l2), (l2, l2), n, seed.derive(16))?);

    out.push(non_minimality(n, seed.derive(17))?);
    out.push(algebra_norm_test_with(linf, l1, n, seed.derive(18), 100)?.report);
    out.push(algebra_norm_test_with(l1, linf, n, seed.derive(19), 100)?.report);
    out.push(min_algebra_scale(l1, linf, n, seed.derive(20))?.report);
    out.push(min_algebra_scale(l2, &f[4], n, seed.derive(21))?.report);
    out.push(scaled_pairs(&f, n, seed.derive(22))?);
    out.extend(transformed(n, seed.derive(23))?);
    Ok(out)
}

fn pick_index(seed: Seed, len: usize) -> usize {
    (seed.0 % len as u64) as usize
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn classical(n: usize, seed: Seed) -> Result<WitnessReport> {
    let (l1, l2, linf) = (NormSpec::l1(), NormSpec::l2(), NormSpec::linf());
    let mut rng = seed.rng();
    let mut worst = 0.0f64;
    for real in [false, true] {
        for _ in 0..20 {
            let a = gaussian_matrix(n, real, &mut rng);
            let cn = classical_norms(&a)?;
            let mut pairs = vec![(gind(&a, &l1, &l1, seed)?, cn.c), (gind(&a, &l2, &l2, seed)?, cn.s)];
            if real {
                pairs.push((gind(&a, &linf, &linf, seed)?, cn.r));
            }
            for (g, expect) in pairs {
                worst = worst.max(rel(g.lower, expect)).max(rel(g.upper, expect));
            }
        }
    }
    Ok(WitnessReport::new(Theorem::ClassicalInduced, seed, 1e-8)
        .input("n", n)
        .input("samples", 40)
        .headline(0.0, worst, Relation::Equal)
        .finish())
}

fn max_norm_defect(n: usize, seed: Seed) -> Result<WitnessReport> {
    let j = Matrix::outer(&Vector::ones(n), &Vector::ones(n));
    let m = MatrixNormKind::M;
    let mj = m.eval(&j)?;
    let mj2 = m.eval(&j.mul(&j)?)?;
    let defect_m = submult_defect(&MatrixNorm::Classical(m), n, 50, seed)?;
    let defect_sigma = submult_defect(&MatrixNorm::Classical(MatrixNormKind::Sigma), n, 200, seed)?;
    let (a, b) = defect_m.witness_pair;
    Ok(WitnessReport::new(Theorem::MaxNormDefect, seed, 1e-12)
        .input("n", n)
        .headline(n as f64, mj2 / (mj * mj), Relation::Equal)
        .witness(Witness::matrix("J", j))
        .witness(Witness::matrix("A", a))
        .witness(Witness::matrix("B", b))
        .check(Check::new("m_defect", defect_m.value, Relation::AtLeast, n as f64, 1e-12))
        .check(Check::new("sigma_defect", defect_sigma.value, Relation::AtMost, 1.0, 1e-9))
        .finish())
}

fn dual_vectors(f: &[NormSpec], n: usize, seed: Seed) -> Result<WitnessReport> {
    let mut rng = seed.rng();
    let (mut pairing, mut dual) = (0.0f64, 0.0f64);
    for s in f {
        for _ in 0..10 {
            let y = gaussian_vector(n, false, &mut rng);
            let norm = s.eval(&y)?;
            let y0 = s.dual_vector(&y)?.y0;
            let p = y0.bilinear(&y)?;
            pairing = pairing.max((p - C64::new(norm, 0.0)).norm() / norm);
            dual = dual.max(s.dual_eval(&y0)?);
        }
    }
    Ok(WitnessReport::new(Theorem::DualVector, seed, 1e-9)
        .input("n", n)
        .input("samples_per_norm", 10)
        .headline(0.0, pairing, Relation::Equal)
        .check(Check::new("max_dual_norm", dual, Relation::AtMost, 1.0, 1e-9))
        .finish())
}

fn column_operators(f: &[NormSpec], n: usize, seed: Seed) -> Result<WitnessReport> {
    let mut rng = seed.rng();
    let mut worst = 0.0f64;
    let mut case = 0u64;
    for d in f {
        for c in f {
            case += 1;
            let x = gaussian_vector(n, false, &mut rng);
            let j = pick_index(seed.derive(case), n);
            let (pj, p) = predicted_column_norms(&x, j, d, c)?;
            let gj = gind(&column_operator(&x, j)?, d, c, seed)?;
            let g = gind(&column_sum_operator(&x), d, c, seed)?;
            for (bounds, pred) in [(gj, pj), (g, p)] {
                worst = worst.max(rel(bounds.lower, pred)).max(rel(bounds.upper, pred));
            }
        }
    }
    Ok(WitnessReport::new(Theorem::ColumnOperators, seed, 1e-9)
        .input("n", n)
        .input("pairs", f.len() * f.len())
        .headline(0.0, worst, Relation::Equal)
        .finish())
}

/// `‖·‖_{1,2} ≤ ‖·‖_{3,2}` iff `‖·‖_3 ≤ ‖·‖_1`, and `‖·‖_{1,2} ≤ ‖·‖_{1,4}`
/// iff `‖·‖_2 ≤ ‖·‖_4`. Each ordered pair of family members is classified
/// by its ratio; dominations are sampled, non-dominations are shown by a
/// rank-one matrix.
fn monotonicity(f: &[NormSpec], n: usize, seed: Seed) -> Result<WitnessReport> {
    let l2 = NormSpec::l2();
    let mut cases = 0usize;
    let mut agree = 0usize;
    for (i, a) in f.iter().enumerate() {
        for (k, b) in f.iter().enumerate() {
            if i == k {
                continue;
            }
            // Domain side: is ‖·‖_{a,ℓ2} ≤ ‖·‖_{b,ℓ2}?
            let r = ratio(b, a, n, seed)?;
            cases += 1;
            if side_agrees(r.upper, r.lower, (a, &l2), (b, &l2), n, seed, || {
                let z0 = b.dual_vector(&r.witness)?.y0;
                Ok(Matrix::outer(&Vector::basis(n, 0)?, &z0))
            })? {
                agree += 1;
            }
            // Codomain side: is ‖·‖_{ℓ2,a} ≤ ‖·‖_{ℓ2,b}?
            let r = ratio(a, b, n, seed)?;
            cases += 1;
            if side_agrees(r.upper, r.lower, (&l2, a), (&l2, b), n, seed, || {
                let z0 = l2.dual_vector(&Vector::basis(n, 0)?)?.y0;
                Ok(Matrix::outer(&r.witness, &z0))
            })? {
                agree += 1;
            }
        }
    }
    Ok(WitnessReport::new(Theorem::Monotonicity, seed, 1e-9)
        .input("n", n)
        .input("family_size", f.len())
        .headline(cases as f64, agree as f64, Relation::Equal)
        .finish())
}

/// Whether the sampled behaviour of `‖·‖_left ≤ ‖·‖_right` matches the
/// prediction from the ratio bracket `[r_lower, r_upper]`.
fn side_agrees(
    r_upper: f64,
    r_lower: f64,
    left: (&NormSpec, &NormSpec),
    right: (&NormSpec, &NormSpec),
    n: usize,
    seed: Seed,
    witness: impl FnOnce() -> Result<Matrix>,
) -> Result<bool> {
    if r_upper <= 1.0 + 1e-9 {
        for k in 0..5 {
            let a = gaussian_matrix(n, false, &mut seed.derive(k).rng());
            let l = gind(&a, left.0, left.1, seed)?.lower;
            let r = gind(&a, right.0, right.1, seed)?.upper;
            if l > r * (1.0 + 1e-8) {
                return Ok(false);
            }
        }
        Ok(true)
    } else if r_lower > 1.0 + 1e-9 {
        let a0 = witness()?;
        let l = gind(&a0, left.0, left.1, seed)?.lower;
        let r = gind(&a0, right.0, right.1, seed)?.upper;
        Ok(l > r * (1.0 + 1e-9))
    } else {
        Ok(false)
    }
}

fn congruence(
    p1: (&NormSpec, &NormSpec),
    p2: (&NormSpec, &NormSpec),
    n: usize,
    seed: Seed,
) -> Result<WitnessReport> {
    let v = gi_congruent(p1, p2, n, seed)?;
    confirm_congruence(&v, p1, p2, n, 20, seed)
}

/// `ℓ2 ≥ ℓ∞` pointwise gives `‖·‖_{ℓ2,2ℓ2} ≤ ‖·‖_{ℓ∞,2ℓ2}`, yet the two
/// differ at the identity (`2` against `2√n`).
fn non_minimality(n: usize, seed: Seed) -> Result<WitnessReport> {
    let (l2, linf) = (NormSpec::l2(), NormSpec::linf());
    let beta = NormSpec::scaled(2.0, NormSpec::l2())?;
    let eye = Matrix::identity(n);
    let small = gind(&eye, &l2, &beta, seed)?;
    let big = gind(&eye, &linf, &beta, seed)?;
    let mut worst = 0.0f64;
    for k in 0..20 {
        let a = gaussian_matrix(n, false, &mut seed.derive(k).rng());
        let lo = gind(&a, &linf, &beta, seed)?.lower;
        let hi = gind(&a, &l2, &beta, seed)?.upper;
        worst = worst.max(hi / lo);
    }
    Ok(WitnessReport::new(Theorem::NonMinimality, seed, 1e-8)
        .input("n", n)
        .headline(2.0 * (n as f64).sqrt(), big.lower, Relation::Equal)
        .check(Check::new("identity_small", small.upper, Relation::Equal, 2.0, 1e-8))
        .check(Check::new("domination", worst, Relation::AtMost, 1.0, 1e-8))
        .finish())
}

/// `‖A‖_{αd,βc} = (β/α)‖A‖_{d,c}` with `α = 2`, `β = 3`, one matrix per
/// pair of family members. Intervals must overlap; lower bounds must agree.
fn scaled_pairs(f: &[NormSpec], n: usize, seed: Seed) -> Result<WitnessReport> {
    let mut rng = seed.rng();
    let mut overlap_gap = 0.0f64;
    let mut lower_gap = 0.0f64;
    for d in f {
        for c in f {
            let a = gaussian_matrix(n, false, &mut rng);
            let sd = NormSpec::scaled(2.0, d.clone())?;
            let sc = NormSpec::scaled(3.0, c.clone())?;
            let scaled = gind(&a, &sd, &sc, seed)?;
            let base = gind(&a, d, c, seed)?;
            let (bl, bu) = (1.5 * base.lower, 1.5 * base.upper);
            overlap_gap = overlap_gap
                .max((scaled.lower - bu) / bu)
                .max((bl - scaled.upper) / scaled.upper);
            lower_gap = lower_gap.max(rel(scaled.lower, bl));
        }
    }
    Ok(WitnessReport::new(Theorem::ScaledPair, seed, 1e-8)
        .input("n", n)
        .input("alpha", 2.0)
        .input("beta", 3.0)
        .headline(0.0, overlap_gap.max(0.0), Relation::AtMost)
        .check(Check::new("lower_bound_agreement", lower_gap, Relation::AtMost, 0.0, 1e-6))
        .finish())
}

fn transformed(n: usize, seed: Seed) -> Result<Vec<WitnessReport>> {
    let bases = [
        (NormSpec::l1(), NormSpec::l1()),
        (NormSpec::l2(), NormSpec::l2()),
        (NormSpec::l1(), NormSpec::lp(3.0)?),
        (NormSpec::l1(), NormSpec::linf()),
    ];
    let mut out = Vec::new();
    for (k, (d, c)) in bases.iter().enumerate() {
        let mut rng = seed.derive(k as u64).rng();
        let near_identity = |rng: &mut gind_core::numerics::Rng| {
            Matrix::identity(n).add(&gaussian_matrix(n, false, rng).scale_real(0.3))
        };
        let km = near_identity(&mut rng)?;
        let lm = near_identity(&mut rng)?;
        let a = gaussian_matrix(n, false, &mut rng);
        out.push(transformed_gind_check(&a, &km, &lm, d, c, seed)?);
    }
    Ok(out)
}

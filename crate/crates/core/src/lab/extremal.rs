//! The sharp constant in `‖A‖_{1,2} ≤ R_{2,4} R_{3,1} ‖A‖_{3,4}`, together
//! with the rank-one matrix attaining it.

use super::{sample_matrix, with_specs, Check, Relation, Theorem, Witness, WitnessReport};
use crate::engine::{gind, ratio};
use crate::error::{Error, Result};
use crate::norms::NormSpec;
use crate::numerics::{Matrix, Seed};

pub const EXTREMAL_TOLERANCE: f64 = 1e-6;
const SAMPLES: u64 = 100;
const BOUND_SLACK: f64 = 1e-8;
const DEGENERATE: f64 = 1e-12;

/// Builds `A₀ = y z₀ᵀ` from the maximizers of `R_{2,4}` and `R_{3,1}` and
/// compares `‖A₀‖_{1,2}/‖A₀‖_{3,4}` with `R_{2,4}R_{3,1}`. Also samples
/// random matrices against the upper bound.
pub fn extremal_ratio_witness(
    n1: &NormSpec,
    n2: &NormSpec,
    n3: &NormSpec,
    n4: &NormSpec,
    n: usize,
    seed: Seed,
) -> Result<WitnessReport> {
    for s in [n1, n2, n3, n4] {
        s.check_dim(n)?;
    }
    let r24 = ratio(n2, n4, n, seed)?;
    let r31 = ratio(n3, n1, n, seed)?;

    let y = &r24.witness;
    let len = y.euclidean();
    if len < DEGENERATE {
        return Err(Error::DegenerateWitness(format!("maximizer of R({n2},{n4}) vanishes")));
    }
    let y = y.scale_real(1.0 / len);
    let z = &r31.witness;
    if z.max_abs() < DEGENERATE {
        return Err(Error::DegenerateWitness(format!("maximizer of R({n3},{n1}) vanishes")));
    }
    let z0 = n3.dual_vector(z)?.y0;
    let a0 = Matrix::outer(&y, &z0);

    let top = gind(&a0, n1, n2, seed)?;
    let bottom = gind(&a0, n3, n4, seed)?;
    if bottom.upper == 0.0 {
        return Err(Error::DegenerateWitness("extremal matrix is zero".into()));
    }
    let predicted = r24.upper * r31.upper;
    let achieved = top.lower / bottom.upper;

    // Largest lower(‖A‖_{1,2}) / (predicted · upper(‖A‖_{3,4})) over samples.
    let mut worst = 0.0f64;
    for k in 0..SAMPLES {
        let a = sample_matrix(n, seed, k);
        let lhs = gind(&a, n1, n2, seed)?.lower;
        let rhs = predicted * gind(&a, n3, n4, seed)?.upper;
        if rhs > 0.0 {
            worst = worst.max(lhs / rhs);
        }
    }

    let report = WitnessReport::new(Theorem::ExtremalRatio, seed, EXTREMAL_TOLERANCE)
        .input("n", n)
        .headline(predicted, achieved, Relation::Equal)
        .witness(Witness::vector("y", y).with_norm(n2)?)
        .witness(Witness::vector("z", z.clone()).with_norm(n3)?)
        .witness(Witness::vector("z0", z0))
        .witness(Witness::matrix("A0", a0.clone()).with_gind(n1, n2, seed)?)
        .witness(Witness::matrix("A0", a0).with_gind(n3, n4, seed)?)
        .check(Check::new("R24", r24.lower, Relation::Equal, r24.upper, EXTREMAL_TOLERANCE))
        .check(Check::new("R31", r31.lower, Relation::Equal, r31.upper, EXTREMAL_TOLERANCE))
        .check(Check::new(
            "sampled_bound_ratio",
            worst,
            Relation::AtMost,
            1.0,
            BOUND_SLACK,
        ));
    Ok(with_specs(report, &[("n1", n1), ("n2", n2), ("n3", n3), ("n4", n4)]).finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Vector;

    #[test]
    fn linf_l1_l2_l2_attains_two() {
        let r = extremal_ratio_witness(
            &NormSpec::linf(),
            &NormSpec::l1(),
            &NormSpec::l2(),
            &NormSpec::l2(),
            2,
            Seed(0),
        )
        .unwrap();
        assert!(r.passed, "{r:#?}");
        assert!((r.predicted - 2.0).abs() < 1e-9);
        assert!((r.achieved - 2.0).abs() < 1e-6);
        let half_j = Matrix::outer(&Vector::ones(2), &Vector::ones(2)).scale_real(0.5);
        let a0 = r
            .witnesses
            .iter()
            .find_map(|w| match (&w.name[..], &w.value) {
                ("A0", super::super::WitnessValue::Matrix(m)) => Some(m.clone()),
                _ => None,
            })
            .unwrap();
        // Equal up to a global unimodular factor; here both maximizers are real.
        assert!(a0.max_abs_diff(&half_j) < 1e-9 || a0.max_abs_diff(&half_j.scale_real(-1.0)) < 1e-9);
    }

    #[test]
    fn identical_specs_give_one() {
        let s = NormSpec::lp(3.0).unwrap();
        let r = extremal_ratio_witness(&s, &s, &s, &s, 2, Seed(1)).unwrap();
        assert!(r.passed);
        assert!((r.predicted - 1.0).abs() < 1e-9);
    }

    #[test]
    fn swapped_pairs_are_symmetric() {
        let (l1, l2) = (NormSpec::l1(), NormSpec::l2());
        let a = extremal_ratio_witness(&l1, &l1, &l2, &l2, 3, Seed(2)).unwrap();
        let b = extremal_ratio_witness(&l2, &l2, &l1, &l1, 3, Seed(2)).unwrap();
        assert!(a.passed && b.passed);
        assert!((a.predicted - b.predicted).abs() < 1e-9);
        assert!((a.predicted - 3f64.sqrt()).abs() < 1e-9);
    }
}

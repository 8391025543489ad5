//! `‖A‖_{K,L} = ‖LAK⁻¹‖` where `‖x‖_K = ‖Kx‖_d` and `‖y‖_L = ‖Ly‖_c`.

use super::{with_specs, Check, Relation, Theorem, Witness, WitnessReport};
use crate::engine::{gind, gind_with, GindOptions};
use crate::error::Result;
use crate::norms::{NormSpec, Transform};
use crate::numerics::{invert, Matrix, Seed};

pub const TRANSFORMED_TOLERANCE: f64 = 1e-8;

/// Compares the transformed-norm evaluation of `A` with the base-norm
/// evaluation of `LAK⁻¹`; the two certified intervals must overlap. A third
/// route maximizes over the transformed sphere directly (no reduction) and
/// must not exceed either upper bound.
pub fn transformed_gind_check(
    a: &Matrix,
    k: &Matrix,
    l: &Matrix,
    base_d: &NormSpec,
    base_c: &NormSpec,
    seed: Seed,
) -> Result<WitnessReport> {
    let n = a.order()?;
    let d = NormSpec::transformed(Transform::linear(k.clone())?, base_d.clone())?;
    let c = NormSpec::transformed(Transform::linear(l.clone())?, base_c.clone())?;
    d.check_dim(n)?;
    c.check_dim(n)?;

    let moved = l.mul(a)?.mul(&invert(k)?)?;
    let left = gind(a, &d, &c, seed)?;
    let right = gind(&moved, base_d, base_c, seed)?;
    let direct = gind_with(a, &d, &c, seed, GindOptions::generic())?;

    let report = WitnessReport::new(Theorem::TransformedNorm, seed, TRANSFORMED_TOLERANCE)
        .input("n", n)
        .input("left_method", left.method.name())
        .input("right_method", right.method.name())
        .headline(right.upper, left.lower, Relation::AtMost)
        .witness(Witness::matrix("A", a.clone()))
        .witness(Witness::matrix("K", k.clone()))
        .witness(Witness::matrix("L", l.clone()))
        .witness(Witness::matrix("LAK^-1", moved).with_gind(base_d, base_c, seed)?)
        .witness(Witness::vector("x", left.witness.clone()).with_norm(&d)?)
        .check(Check::new("right_below_left", right.lower, Relation::AtMost, left.upper, TRANSFORMED_TOLERANCE))
        .check(Check::new("direct_below_right", direct.lower, Relation::AtMost, right.upper, TRANSFORMED_TOLERANCE));
    Ok(with_specs(report, &[("base_d", base_d), ("base_c", base_c)]).finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::C64;

    fn m(rows: &[&[f64]]) -> Matrix {
        Matrix::from_real_rows(rows).unwrap()
    }

    #[test]
    fn diagonal_domain_transform() {
        let a = m(&[&[1.0, 2.0], &[3.0, 4.0]]);
        let k = Matrix::diag_real(&[1.0, 2.0]);
        let r = transformed_gind_check(&a, &k, &Matrix::identity(2), &NormSpec::l1(), &NormSpec::l1(), Seed(0))
            .unwrap();
        assert!(r.passed, "{r:#?}");
        assert!((r.predicted - 4.0).abs() < 1e-12);
        assert!((r.achieved - 4.0).abs() < 1e-12);
    }

    #[test]
    fn identity_transforms() {
        let a = m(&[&[1.0, -2.0], &[0.5, 4.0]]);
        let i = Matrix::identity(2);
        let r = transformed_gind_check(&a, &i, &i, &NormSpec::l2(), &NormSpec::linf(), Seed(0)).unwrap();
        assert!(r.passed, "{r:#?}");
    }

    #[test]
    fn scalar_transforms_scale_by_ratio() {
        let a = m(&[&[1.0, -2.0], &[0.5, 4.0]]);
        let k = Matrix::scalar(2, C64::new(2.0, 0.0));
        let l = Matrix::scalar(2, C64::new(3.0, 0.0));
        let (d, c) = (NormSpec::l1(), NormSpec::l2());
        let r = transformed_gind_check(&a, &k, &l, &d, &c, Seed(0)).unwrap();
        assert!(r.passed, "{r:#?}");
        let base = gind(&a, &d, &c, Seed(0)).unwrap();
        assert!((r.achieved - 1.5 * base.lower).abs() < 1e-10 * r.achieved);
    }

    #[test]
    fn singular_k_rejected() {
        let a = Matrix::identity(2);
        let k = m(&[&[1.0, 1.0], &[1.0, 1.0]]);
        let err = transformed_gind_check(&a, &k, &a, &NormSpec::l1(), &NormSpec::l1(), Seed(0)).unwrap_err();
        assert_eq!(err.name(), "SingularMatrix");
    }
}

//! The column operators `C_{x,j}: y ↦ y_j x` and `C_x = Σ_j C_{x,j}`.

use crate::error::{Error, Result};
use crate::norms::NormSpec;
use crate::numerics::{Matrix, Vector};

/// Matrix with `x` as column `j` (zero-based) and zeros elsewhere.
pub fn column_operator(x: &Vector, j: usize) -> Result<Matrix> {
    let n = x.dim();
    if j >= n {
        return Err(Error::IndexOutOfRange { index: j, dim: n });
    }
    let mut m = Matrix::zeros(n, n);
    for (i, &z) in x.iter().enumerate() {
        m.set(i, j, z);
    }
    Ok(m)
}

/// Matrix whose every column equals `x`.
pub fn column_sum_operator(x: &Vector) -> Matrix {
    Matrix::outer(x, &Vector::ones(x.dim()))
}

/// Predicted g-ind norms `(‖C_{x,j}‖, ‖C_x‖) = (α_j‖x‖_c, α‖x‖_c)`, where
/// `α_j = max{|y_j| : ‖y‖_d = 1}` and `α = max{|Σ y_i| : ‖y‖_d = 1}`. Both
/// maxima are dual-norm values of `d`, at `e_j` and at the all-ones vector.
pub fn predicted_column_norms(
    x: &Vector,
    j: usize,
    d: &NormSpec,
    c: &NormSpec,
) -> Result<(f64, f64)> {
    let n = x.dim();
    d.check_dim(n)?;
    c.check_dim(n)?;
    let e_j = Vector::basis(n, j)?;
    let alpha_j = d.dual_eval(&e_j)?;
    let alpha = d.dual_eval(&Vector::ones(n))?;
    let cx = c.eval(x)?;
    Ok((alpha_j * cx, alpha * cx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{gind, Method};
    use crate::numerics::{Seed, C64};

    fn v(re: &[f64]) -> Vector {
        Vector::from_real(re).unwrap()
    }

    #[test]
    fn operators_by_definition() {
        let x = v(&[1.0, 2.0]);
        assert_eq!(
            column_operator(&x, 0).unwrap(),
            Matrix::from_real_rows(&[&[1.0, 0.0], &[2.0, 0.0]]).unwrap()
        );
        assert_eq!(
            column_sum_operator(&v(&[1.0, 0.0])),
            Matrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 0.0]]).unwrap()
        );
        assert_eq!(column_sum_operator(&Vector::zeros(2)), Matrix::zeros(2, 2));
        assert_eq!(column_operator(&Vector::zeros(2), 1).unwrap(), Matrix::zeros(2, 2));
        assert_eq!(
            column_operator(&x, 2),
            Err(Error::IndexOutOfRange { index: 2, dim: 2 })
        );
    }

    #[test]
    fn prediction_examples() {
        let x = v(&[1.0, 2.0]);
        let (pj, _) = predicted_column_norms(&x, 0, &NormSpec::l1(), &NormSpec::linf()).unwrap();
        assert_eq!(pj, 2.0);
        let r = gind(
            &column_operator(&x, 0).unwrap(),
            &NormSpec::l1(),
            &NormSpec::linf(),
            Seed(0),
        )
        .unwrap();
        assert_eq!(r.lower, 2.0);

        let e1 = v(&[1.0, 0.0]);
        let (_, p) = predicted_column_norms(&e1, 0, &NormSpec::linf(), &NormSpec::linf()).unwrap();
        assert_eq!(p, 2.0);
        let r = gind(
            &column_sum_operator(&e1),
            &NormSpec::linf(),
            &NormSpec::linf(),
            Seed(0),
        )
        .unwrap();
        assert!(matches!(r.method, Method::ExactSignEnum | Method::ExactRankOne));
        assert!((r.lower - 2.0).abs() < 1e-14);

        assert_eq!(
            predicted_column_norms(&Vector::zeros(2), 1, &NormSpec::l2(), &NormSpec::l1()).unwrap(),
            (0.0, 0.0)
        );
    }

    /// α_j and α straight from their definitions, by sweeping the complex
    /// unit sphere of `d` at n = 2 (two moduli and a relative phase; a
    /// global phase does not change |y_j| or |y₁ + y₂|).
    fn alpha_sweep(d: &NormSpec) -> (f64, f64, f64) {
        let (mut a1, mut a2, mut a) = (0.0f64, 0.0f64, 0.0f64);
        let steps = 200;
        for i in 0..=steps {
            let t = std::f64::consts::FRAC_PI_2 * i as f64 / steps as f64;
            for k in 0..steps {
                let phi = std::f64::consts::TAU * k as f64 / steps as f64;
                let y = Vector::new(vec![
                    C64::new(t.cos(), 0.0),
                    C64::from_polar(t.sin(), phi),
                ])
                .unwrap();
                let y = y.scale_real(1.0 / d.eval(&y).unwrap());
                a1 = a1.max(y[0].norm());
                a2 = a2.max(y[1].norm());
                a = a.max((y[0] + y[1]).norm());
            }
        }
        (a1, a2, a)
    }

    #[test]
    fn alpha_identities_match_definition() {
        let k = Matrix::from_real_rows(&[&[2.0, 1.0], &[0.0, 1.0]]).unwrap();
        let specs = [
            NormSpec::l1(),
            NormSpec::l2(),
            NormSpec::linf(),
            NormSpec::lp(3.0).unwrap(),
            NormSpec::scaled(2.0, NormSpec::l2()).unwrap(),
            NormSpec::linear(k, NormSpec::l1()).unwrap(),
        ];
        let x = v(&[1.0, 1.0]);
        for d in &specs {
            let (a1, a2, a) = alpha_sweep(d);
            let c = NormSpec::l1();
            let cx = c.eval(&x).unwrap();
            let (p1, pa) = predicted_column_norms(&x, 0, d, &c).unwrap();
            let (p2, _) = predicted_column_norms(&x, 1, d, &c).unwrap();
            for (pred, swept) in [(p1, a1 * cx), (p2, a2 * cx), (pa, a * cx)] {
                assert!(pred >= swept * (1.0 - 1e-12), "{d}: {pred} < {swept}");
                assert!((pred - swept) / pred < 1e-3, "{d}: {pred} vs {swept}");
            }
        }
    }
}

//! Generalized induced norms `‖A‖_{d,c} = max{‖Ax‖_c : ‖x‖_d = 1}`.
//!
//! Every evaluation returns certified bounds. Transformed norms are first
//! reduced to their base ℓp norms through `‖A‖_{K,L} = ‖LAK⁻¹‖`, after which
//! the reduced matrix is dispatched to an exact formula when one applies:
//!
//! | reduced problem                         | method          |
//! |-----------------------------------------|-----------------|
//! | domain ℓ1                               | `ExactColumn`   |
//! | ℓ2 → ℓ2                                 | `ExactSpectral` |
//! | `c·I` between ℓp norms                  | `ExactScalar`   |
//! | rank one `x uᵀ`                         | `ExactRankOne`  |
//! | real data, domain ℓ∞, codomain ℓ∞ (or real restriction) | `ExactSignEnum` |
//!
//! Anything else runs the multistart ascent for the lower bound and the ℓ2
//! sandwich for the upper bound.

mod ascent;
mod classical;
mod columns;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::norms::{lp_ratio, Exponent, NormSpec};
use crate::numerics::{top_singular, Matrix, Seed, Vector, ONE};

pub use classical::{
    classical_norms, submult_defect, ClassicalNorms, DefectEstimate, MatrixNorm, MatrixNormKind,
};
pub use columns::{column_operator, column_sum_operator, predicted_column_norms};

/// Sign enumeration is exponential; larger orders take the generic path.
pub const MAX_SIGN_ENUM_ORDER: usize = 20;

/// Relative slack between certified lower and upper bounds.
pub const BOUND_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Method {
    ExactColumn,
    ExactSpectral,
    ExactSignEnum,
    ExactRankOne,
    ExactScalar,
    #[serde(rename = "Ascent+Sandwich")]
    AscentSandwich,
}

impl Method {
    pub fn is_exact(self) -> bool {
        self != Method::AscentSandwich
    }

    pub fn name(self) -> &'static str {
        match self {
            Method::ExactColumn => "ExactColumn",
            Method::ExactSpectral => "ExactSpectral",
            Method::ExactSignEnum => "ExactSignEnum",
            Method::ExactRankOne => "ExactRankOne",
            Method::ExactScalar => "ExactScalar",
            Method::AscentSandwich => "Ascent+Sandwich",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GindResult {
    pub lower: f64,
    pub upper: f64,
    /// Unit vector of the domain norm attaining `lower`.
    pub witness: Vector,
    pub method: Method,
}

impl GindResult {
    pub fn gap(&self) -> f64 {
        self.upper - self.lower
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GindOptions {
    /// Maximize over real vectors only. Requires real matrix and norms.
    pub real_restriction: bool,
    /// Skip every exact formula and run ascent + sandwich.
    pub force_generic: bool,
}

impl GindOptions {
    pub fn real() -> Self {
        GindOptions {
            real_restriction: true,
            ..Self::default()
        }
    }

    pub fn generic() -> Self {
        GindOptions {
            force_generic: true,
            ..Self::default()
        }
    }
}

pub fn gind(a: &Matrix, d: &NormSpec, c: &NormSpec, seed: Seed) -> Result<GindResult> {
    gind_with(a, d, c, seed, GindOptions::default())
}

/// `R_{i,j} = max ‖x‖_i/‖x‖_j`, computed as the g-ind norm of the identity
/// from `j` into `i`.
pub fn ratio(i: &NormSpec, j: &NormSpec, n: usize, seed: Seed) -> Result<GindResult> {
    gind(&Matrix::identity(n), j, i, seed)
}

pub fn ratio_with(
    i: &NormSpec,
    j: &NormSpec,
    n: usize,
    seed: Seed,
    options: GindOptions,
) -> Result<GindResult> {
    gind_with(&Matrix::identity(n), j, i, seed, options)
}

/// The problem after pulling the transforms of both norms into the matrix.
pub(crate) struct Reduced {
    pub n: usize,
    pub m: Matrix,
    pub domain: Exponent,
    pub codomain: Exponent,
    pub k_inv: Option<Matrix>,
}

impl Reduced {
    pub fn new(a: &Matrix, d: &NormSpec, c: &NormSpec) -> Result<Self> {
        let n = a.order()?;
        let fd = d.flatten(n)?;
        let fc = c.flatten(n)?;
        let mut m = a.clone();
        if let Some(k_inv) = &fd.k_inv {
            m = m.mul(k_inv)?;
        }
        if let Some(l) = &fc.k {
            m = l.mul(&m)?;
        }
        Ok(Reduced {
            n,
            m,
            domain: fd.exponent,
            codomain: fc.exponent,
            k_inv: fd.k_inv,
        })
    }

    /// Maps a reduced-coordinate vector back to the original domain.
    pub fn pull_back(&self, u: &Vector) -> Vector {
        match &self.k_inv {
            Some(k_inv) => k_inv.mul_vec(u).expect("matching dimension"),
            None => u.clone(),
        }
    }

    /// `ℓ_codomain(M u)`.
    pub fn objective(&self, u: &Vector) -> f64 {
        NormSpec::Lp(self.codomain)
            .eval(&self.m.mul_vec(u).expect("matching dimension"))
            .expect("plain lp accepts any dimension")
    }

    /// `R(codomain, ℓ2)·R(ℓ2, domain)·σ_max(M)`.
    pub fn sandwich(&self, sigma: f64) -> f64 {
        let two = Exponent::Finite(2.0);
        lp_ratio(self.codomain, two, self.n) * lp_ratio(two, self.domain, self.n) * sigma
    }
}

pub fn gind_with(
    a: &Matrix,
    d: &NormSpec,
    c: &NormSpec,
    seed: Seed,
    options: GindOptions,
) -> Result<GindResult> {
    let n = a.order()?;
    d.check_dim(n)?;
    c.check_dim(n)?;
    if options.real_restriction && !(a.is_real() && d.is_real() && c.is_real()) {
        return Err(Error::InvalidArgument(
            "real restriction needs a real matrix and real norms".into(),
        ));
    }
    let reduced = Reduced::new(a, d, c)?;

    let exact = if options.force_generic {
        None
    } else {
        exact_path(&reduced, options)?
    };
    let (value, witness, method) = match exact {
        Some((value, u, method)) => (Some(value), reduced.pull_back(&u), method),
        None => {
            let found = ascent::maximize(a, d, c, &reduced, seed, options)?;
            (None, found.witness, Method::AscentSandwich)
        }
    };

    // The reported lower bound is always re-measured on the witness in the
    // caller's own norms.
    let dw = d.eval(&witness)?;
    if dw == 0.0 {
        return Err(Error::ZeroVector);
    }
    let witness = witness.scale_real(1.0 / dw);
    let lower = c.eval(&a.mul_vec(&witness)?)?;
    let upper = match value {
        Some(v) => v.max(lower),
        None => {
            let sigma = top_singular(&reduced.m)?.value;
            reduced.sandwich(sigma).max(lower)
        }
    };
    Ok(GindResult {
        lower,
        upper,
        witness,
        method,
    })
}

type Exact = Option<(f64, Vector, Method)>;

fn exact_path(r: &Reduced, options: GindOptions) -> Result<Exact> {
    let n = r.n;
    if r.domain.is_one() {
        return Ok(Some(column_path(r)));
    }
    if r.domain.is_two() && r.codomain.is_two() {
        let top = top_singular(&r.m)?;
        return Ok(Some((top.value, top.right, Method::ExactSpectral)));
    }
    if let Some(s) = r.m.as_scalar() {
        let factor = lp_ratio(r.codomain, r.domain, n);
        let u = if factor > 1.0 {
            Vector::ones(n)
        } else {
            Vector::basis(n, 0)?
        };
        return Ok(Some((s.norm() * factor, u, Method::ExactScalar)));
    }
    if let Some((x, u)) = rank_one_factors(&r.m) {
        let value = NormSpec::Lp(r.codomain).eval(&x)? * NormSpec::Lp(r.domain).dual_eval(&u)?;
        let w = NormSpec::Lp(r.domain).support_point(&u)?;
        return Ok(Some((value, w, Method::ExactRankOne)));
    }
    if r.domain.is_infinity()
        && r.m.is_real()
        && (r.codomain.is_infinity() || options.real_restriction)
        && n <= MAX_SIGN_ENUM_ORDER
    {
        return Ok(Some(sign_enumeration(r)));
    }
    Ok(None)
}

fn column_path(r: &Reduced) -> (f64, Vector, Method) {
    let mut best = (-1.0, 0);
    for j in 0..r.n {
        let v = NormSpec::Lp(r.codomain)
            .eval(&r.m.column(j))
            .expect("plain lp");
        if v > best.0 {
            best = (v, j);
        }
    }
    let u = Vector::basis(r.n, best.1).expect("index in range");
    (best.0, u, Method::ExactColumn)
}

fn sign_enumeration(r: &Reduced) -> (f64, Vector, Method) {
    let n = r.n;
    let mut best = (-1.0, Vector::ones(n));
    for mask in 0u64..(1u64 << (n - 1)) {
        let u = Vector::from_vec(
            (0..n)
                .map(|i| {
                    if i > 0 && mask & (1 << (i - 1)) != 0 {
                        -ONE
                    } else {
                        ONE
                    }
                })
                .collect(),
        );
        let v = r.objective(&u);
        if v > best.0 {
            best = (v, u);
        }
    }
    (best.0, best.1, Method::ExactSignEnum)
}

/// Splits `m = x uᵀ` when `m` is rank one up to rounding.
fn rank_one_factors(m: &Matrix) -> Option<(Vector, Vector)> {
    let scale = m.max_abs();
    if scale == 0.0 {
        return None;
    }
    let n = m.rows();
    let (mut pi, mut pj) = (0, 0);
    for i in 0..n {
        for j in 0..n {
            if m.get(i, j).norm() > m.get(pi, pj).norm() {
                (pi, pj) = (i, j);
            }
        }
    }
    let x = m.column(pj);
    let pivot = m.get(pi, pj);
    let u = Vector::from_vec(m.row(pi).iter().map(|z| z / pivot).collect());
    let rebuilt = Matrix::outer(&x, &u);
    if rebuilt.max_abs_diff(m) <= 1e-14 * scale {
        Some((x, u))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::C64;

    fn m(rows: &[&[f64]]) -> Matrix {
        Matrix::from_real_rows(rows).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    /// Dense parameterized sweep of the real unit sphere of `d` at n = 2.
    fn real_sweep(a: &Matrix, d: &NormSpec, c: &NormSpec, points: usize) -> f64 {
        (0..points)
            .map(|k| {
                let t = std::f64::consts::PI * k as f64 / points as f64;
                let x = Vector::from_real(&[t.cos(), t.sin()]).unwrap();
                c.eval(&a.mul_vec(&x).unwrap()).unwrap() / d.eval(&x).unwrap()
            })
            .fold(0.0, f64::max)
    }

    #[test]
    fn column_sum_example() {
        let a = m(&[&[1.0, 2.0], &[3.0, 4.0]]);
        let r = gind(&a, &NormSpec::l1(), &NormSpec::l1(), Seed(0)).unwrap();
        assert_eq!(r.method, Method::ExactColumn);
        assert!(close(r.lower, 6.0, 1e-15) && close(r.upper, 6.0, 1e-15));
        let sweep = real_sweep(&a, &NormSpec::l1(), &NormSpec::l1(), 10_000);
        assert!(close(sweep, 6.0, 1e-3));
    }

    #[test]
    fn identity_has_norm_one_for_identical_specs() {
        let specs = [
            NormSpec::l1(),
            NormSpec::l2(),
            NormSpec::linf(),
            NormSpec::lp(3.0).unwrap(),
            NormSpec::scaled(2.0, NormSpec::l2()).unwrap(),
            NormSpec::linear(m(&[&[1.0, 2.0], &[0.0, 1.0]]), NormSpec::lp(1.5).unwrap()).unwrap(),
        ];
        for s in &specs {
            let r = gind(&Matrix::identity(2), s, s, Seed(1)).unwrap();
            assert!(close(r.lower, 1.0, 1e-12), "{s}: {r:?}");
            assert!(close(r.upper, 1.0, 1e-12), "{s}: {r:?}");
        }
    }

    #[test]
    fn spectral_example() {
        let r = gind(
            &Matrix::diag_real(&[1.0, 2.0]),
            &NormSpec::l2(),
            &NormSpec::l2(),
            Seed(0),
        )
        .unwrap();
        assert_eq!(r.method, Method::ExactSpectral);
        assert!(close(r.lower, 2.0, 1e-12) && close(r.upper, 2.0, 1e-12));
    }

    #[test]
    fn ratio_examples() {
        let r = ratio(&NormSpec::l1(), &NormSpec::linf(), 2, Seed(0)).unwrap();
        assert!(close(r.lower, 2.0, 1e-12) && close(r.upper, 2.0, 1e-12));
        let r = ratio(&NormSpec::l2(), &NormSpec::linf(), 3, Seed(0)).unwrap();
        assert!(close(r.lower, 3f64.sqrt(), 1e-12) && close(r.upper, 3f64.sqrt(), 1e-12));
        // Sweep of the l-infinity sphere at n = 3 over real sign patterns
        // and a coarse interior grid.
        let mut best: f64 = 0.0;
        let steps = 40;
        for a in 0..=steps {
            for b in 0..=steps {
                let y = -1.0 + 2.0 * a as f64 / steps as f64;
                let z = -1.0 + 2.0 * b as f64 / steps as f64;
                let x = Vector::from_real(&[1.0, y, z]).unwrap();
                best = best.max(NormSpec::l2().eval(&x).unwrap());
            }
        }
        assert!(close(best, 3f64.sqrt(), 1e-12));
    }

    #[test]
    fn sign_enumeration_matches_row_sums() {
        let a = m(&[&[1.0, -2.0, 0.5], &[3.0, 1.0, -1.0], &[0.0, 0.0, 2.0]]);
        let r = gind(&a, &NormSpec::linf(), &NormSpec::linf(), Seed(0)).unwrap();
        assert_eq!(r.method, Method::ExactSignEnum);
        assert!(close(r.lower, 5.0, 1e-14));
    }

    #[test]
    fn rank_one_is_exact() {
        let x = Vector::from_real(&[1.0, 2.0]).unwrap();
        let u = Vector::from_real(&[1.0, -1.0]).unwrap();
        let a = Matrix::outer(&x, &u);
        let r = gind(&a, &NormSpec::lp(3.0).unwrap(), &NormSpec::linf(), Seed(0)).unwrap();
        assert_eq!(r.method, Method::ExactRankOne);
        // ‖x‖∞ · ‖u‖_{3/2}
        let expect = 2.0 * 2f64.powf(2.0 / 3.0);
        assert!(close(r.lower, expect, 1e-12) && close(r.upper, expect, 1e-12));
    }

    #[test]
    fn transformed_domain_over_l1_uses_columns() {
        let a = m(&[&[1.0, 2.0], &[3.0, 4.0]]);
        let d = NormSpec::linear(Matrix::diag_real(&[1.0, 2.0]), NormSpec::l1()).unwrap();
        let r = gind(&a, &d, &NormSpec::l1(), Seed(0)).unwrap();
        assert_eq!(r.method, Method::ExactColumn);
        assert!(close(r.lower, 4.0, 1e-14));
    }

    #[test]
    fn generic_path_brackets_value() {
        let a = m(&[&[1.0, 2.0], &[-3.0, 0.5]]);
        let p3 = NormSpec::lp(3.0).unwrap();
        let r = gind(&a, &p3, &NormSpec::l1(), Seed(0)).unwrap();
        assert_eq!(r.method, Method::AscentSandwich);
        assert!(r.lower <= r.upper * (1.0 + BOUND_SLACK));
        let sweep = real_sweep(&a, &p3, &NormSpec::l1(), 10_000);
        // Real data: the complex maximum is at least the real one.
        assert!(r.lower >= sweep * (1.0 - 1e-9));
        let real = gind_with(&a, &p3, &NormSpec::l1(), Seed(0), GindOptions::real()).unwrap();
        assert!(close(real.lower, sweep, 1e-3));
    }

    #[test]
    fn forced_generic_reaches_exact_values() {
        let a = m(&[&[1.0, 2.0], &[3.0, 4.0]]);
        for (d, c) in [
            (NormSpec::l1(), NormSpec::l1()),
            (NormSpec::l2(), NormSpec::l2()),
            (NormSpec::linf(), NormSpec::linf()),
        ] {
            let exact = gind(&a, &d, &c, Seed(0)).unwrap();
            let generic = gind_with(&a, &d, &c, Seed(0), GindOptions::generic()).unwrap();
            assert!(close(generic.lower, exact.lower, 1e-9), "{d}->{c}");
            assert!(generic.upper >= exact.lower * (1.0 - 1e-12));
        }
    }

    #[test]
    fn real_restriction_rejects_complex_data() {
        let a = Matrix::diag(&[C64::new(0.0, 1.0), ONE]);
        assert!(matches!(
            gind_with(&a, &NormSpec::l1(), &NormSpec::l1(), Seed(0), GindOptions::real()),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn dimension_mismatch_with_fixed_transform() {
        let d = NormSpec::linear(Matrix::diag_real(&[1.0, 2.0]), NormSpec::l1()).unwrap();
        assert!(matches!(
            gind(&Matrix::identity(3), &d, &NormSpec::l1(), Seed(0)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn zero_matrix_has_zero_norm() {
        for (d, c) in [
            (NormSpec::l1(), NormSpec::l2()),
            (NormSpec::lp(3.0).unwrap(), NormSpec::l1()),
            (NormSpec::linf(), NormSpec::l2()),
        ] {
            let r = gind(&Matrix::zeros(2, 2), &d, &c, Seed(0)).unwrap();
            assert_eq!(r.lower, 0.0);
            assert_eq!(r.upper, 0.0);
        }
    }
}

//! Vector norms on C^n: ℓp and norms of the form `x ↦ ‖Kx‖` over a base norm.
//!
//! All dual objects use the bilinear pairing `yᵀx` (plain transpose). The
//! conjugation needed to make `y₀ᵀy` real is folded into the entries of the
//! dual vector itself.

mod parse;

use std::fmt;

use crate::error::{Error, Result};
use crate::numerics::{check_dim, condition_estimate, invert, Matrix, Vector, C64, ZERO};

pub use parse::{load_matrix, parse_norm_spec, parse_norm_spec_with};

/// Maximum nesting of `Transformed` layers.
pub const MAX_DEPTH: usize = 8;

/// Largest accepted 1-norm condition estimate for a transform matrix.
pub const MAX_CONDITION: f64 = 1e12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    pub fn new(p: f64) -> Result<Self> {
        if p.is_nan() || p < 1.0 {
            return Err(Error::InvalidExponent(p));
        }
        Ok(if p.is_infinite() {
            Exponent::Infinity
        } else {
            Exponent::Finite(p)
        })
    }

    /// The conjugate exponent q with 1/p + 1/q = 1.
    pub fn conjugate(self) -> Exponent {
        match self {
            Exponent::Infinity => Exponent::Finite(1.0),
            Exponent::Finite(p) if p == 1.0 => Exponent::Infinity,
            Exponent::Finite(p) => Exponent::Finite(p / (p - 1.0)),
        }
    }

    /// 1/p, with 1/∞ = 0.
    pub fn reciprocal(self) -> f64 {
        match self {
            Exponent::Infinity => 0.0,
            Exponent::Finite(p) => 1.0 / p,
        }
    }

    pub fn is_one(self) -> bool {
        self == Exponent::Finite(1.0)
    }

    pub fn is_two(self) -> bool {
        self == Exponent::Finite(2.0)
    }

    pub fn is_infinity(self) -> bool {
        self == Exponent::Infinity
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Infinity => write!(f, "linf"),
            Exponent::Finite(p) if *p == 1.0 => write!(f, "l1"),
            Exponent::Finite(p) if *p == 2.0 => write!(f, "l2"),
            Exponent::Finite(p) => write!(f, "lp:{p}"),
        }
    }
}

/// The linear map inside a `Transformed` norm.
#[derive(Debug, Clone, PartialEq)]
pub enum Transform {
    /// `c·I` in whatever dimension the norm is used.
    Scale(C64),
    /// An invertible matrix with its precomputed inverse.
    Linear { k: Matrix, k_inv: Matrix },
}

impl Transform {
    pub fn scale(c: C64) -> Result<Self> {
        if !(c.re.is_finite() && c.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        if c == ZERO {
            return Err(Error::SingularMatrix {
                pivot: 0,
                magnitude: 0.0,
            });
        }
        Ok(Transform::Scale(c))
    }

    pub fn linear(k: Matrix) -> Result<Self> {
        k.order()?;
        let cond = condition_estimate(&k)?;
        if !(cond <= MAX_CONDITION) {
            return Err(Error::IllConditioned(cond));
        }
        let k_inv = invert(&k)?;
        Ok(Transform::Linear { k, k_inv })
    }

    pub fn dim(&self) -> Option<usize> {
        match self {
            Transform::Scale(_) => None,
            Transform::Linear { k, .. } => Some(k.rows()),
        }
    }

    pub fn is_real(&self) -> bool {
        match self {
            Transform::Scale(c) => c.im == 0.0,
            Transform::Linear { k, .. } => k.is_real(),
        }
    }

    pub fn apply(&self, x: &Vector) -> Result<Vector> {
        match self {
            Transform::Scale(c) => Ok(x.scale(*c)),
            Transform::Linear { k, .. } => k.mul_vec(x),
        }
    }

    pub fn apply_inverse(&self, x: &Vector) -> Result<Vector> {
        match self {
            Transform::Scale(c) => Ok(x.scale(c.inv())),
            Transform::Linear { k_inv, .. } => k_inv.mul_vec(x),
        }
    }

    /// `Kᵀ x`.
    pub fn apply_transpose(&self, x: &Vector) -> Result<Vector> {
        match self {
            Transform::Scale(c) => Ok(x.scale(*c)),
            Transform::Linear { k, .. } => k.transpose().mul_vec(x),
        }
    }

    /// `K⁻ᵀ x`.
    pub fn apply_inverse_transpose(&self, x: &Vector) -> Result<Vector> {
        match self {
            Transform::Scale(c) => Ok(x.scale(c.inv())),
            Transform::Linear { k_inv, .. } => k_inv.transpose().mul_vec(x),
        }
    }

    pub fn matrix(&self, n: usize) -> Matrix {
        match self {
            Transform::Scale(c) => Matrix::scalar(n, *c),
            Transform::Linear { k, .. } => k.clone(),
        }
    }

    pub fn inverse_matrix(&self, n: usize) -> Matrix {
        match self {
            Transform::Scale(c) => Matrix::scalar(n, c.inv()),
            Transform::Linear { k_inv, .. } => k_inv.clone(),
        }
    }
}

/// A vector norm on C^n.
#[derive(Debug, Clone, PartialEq)]
pub enum NormSpec {
    Lp(Exponent),
    /// `x ↦ ‖Kx‖_base`.
    Transformed {
        transform: Transform,
        base: Box<NormSpec>,
    },
}

/// A `Transformed` chain collapsed to `x ↦ ℓp(Kx)`; `k` is `None` for the
/// identity.
#[derive(Debug, Clone)]
pub struct Flattened {
    pub exponent: Exponent,
    pub k: Option<Matrix>,
    pub k_inv: Option<Matrix>,
}

impl NormSpec {
    pub fn l1() -> Self {
        NormSpec::Lp(Exponent::Finite(1.0))
    }

    pub fn l2() -> Self {
        NormSpec::Lp(Exponent::Finite(2.0))
    }

    pub fn linf() -> Self {
        NormSpec::Lp(Exponent::Infinity)
    }

    pub fn lp(p: f64) -> Result<Self> {
        Exponent::new(p).map(NormSpec::Lp)
    }

    pub fn transformed(transform: Transform, base: NormSpec) -> Result<Self> {
        if base.depth() + 1 > MAX_DEPTH {
            return Err(Error::NestingTooDeep(MAX_DEPTH));
        }
        if let (Some(a), Some(b)) = (transform.dim(), base.dim()) {
            check_dim(b, a)?;
        }
        Ok(NormSpec::Transformed {
            transform,
            base: Box::new(base),
        })
    }

    /// `c‖·‖_base`, stored as the transform `cI`.
    pub fn scaled(c: f64, base: NormSpec) -> Result<Self> {
        Self::transformed(Transform::scale(C64::new(c, 0.0))?, base)
    }

    /// `‖K·‖_base`.
    pub fn linear(k: Matrix, base: NormSpec) -> Result<Self> {
        Self::transformed(Transform::linear(k)?, base)
    }

    /// Number of `Transformed` layers.
    pub fn depth(&self) -> usize {
        match self {
            NormSpec::Lp(_) => 0,
            NormSpec::Transformed { base, .. } => 1 + base.depth(),
        }
    }

    /// Dimension fixed by a matrix transform, if any.
    pub fn dim(&self) -> Option<usize> {
        match self {
            NormSpec::Lp(_) => None,
            NormSpec::Transformed { transform, base } => transform.dim().or_else(|| base.dim()),
        }
    }

    /// Checks that the norm can act on C^n.
    pub fn check_dim(&self, n: usize) -> Result<()> {
        match self.dim() {
            Some(d) => check_dim(d, n),
            None => Ok(()),
        }
    }

    pub fn is_real(&self) -> bool {
        match self {
            NormSpec::Lp(_) => true,
            NormSpec::Transformed { transform, base } => transform.is_real() && base.is_real(),
        }
    }

    pub fn base_exponent(&self) -> Exponent {
        match self {
            NormSpec::Lp(e) => *e,
            NormSpec::Transformed { base, .. } => base.base_exponent(),
        }
    }

    /// Collapses nested transforms into one matrix acting before the base ℓp.
    pub fn flatten(&self, n: usize) -> Result<Flattened> {
        self.check_dim(n)?;
        let mut k: Option<Matrix> = None;
        let mut k_inv: Option<Matrix> = None;
        let mut cur = self;
        while let NormSpec::Transformed { transform, base } = cur {
            // Inner transforms act after the outer ones: K = K_inner · K_outer.
            let t = transform.matrix(n);
            let t_inv = transform.inverse_matrix(n);
            k = Some(match k {
                None => t,
                Some(prev) => t.mul(&prev)?,
            });
            k_inv = Some(match k_inv {
                None => t_inv,
                Some(prev) => prev.mul(&t_inv)?,
            });
            cur = base;
        }
        Ok(Flattened {
            exponent: cur.base_exponent(),
            k,
            k_inv,
        })
    }

    /// True when the norm is a positive multiple of ℓ2 composed with a
    /// scalar multiple of a unitary, i.e. invariant under every unitary.
    pub fn is_unitarily_invariant(&self, n: usize) -> Result<bool> {
        let flat = self.flatten(n)?;
        if !flat.exponent.is_two() {
            return Ok(false);
        }
        let Some(k) = flat.k else { return Ok(true) };
        let gram = k.conj_transpose().mul(&k)?;
        let c = gram.get(0, 0);
        let target = Matrix::scalar(n, c);
        Ok(gram.max_abs_diff(&target) <= 1e-12 * c.norm().max(1.0))
    }

    pub fn eval(&self, x: &Vector) -> Result<f64> {
        self.check_dim(x.dim())?;
        match self {
            NormSpec::Lp(e) => Ok(lp_eval(*e, x)),
            NormSpec::Transformed { transform, base } => base.eval(&transform.apply(x)?),
        }
    }

    /// Dual norm `max{|yᵀx| : ‖x‖ = 1}`.
    pub fn dual_eval(&self, y: &Vector) -> Result<f64> {
        self.check_dim(y.dim())?;
        match self {
            NormSpec::Lp(e) => Ok(lp_eval(e.conjugate(), y)),
            NormSpec::Transformed { transform, base } => {
                base.dual_eval(&transform.apply_inverse_transpose(y)?)
            }
        }
    }

    /// A vector `y₀` with `y₀ᵀy = ‖y‖` and `|y₀ᵀx| ≤ ‖x‖` for every x.
    pub fn dual_vector(&self, y: &Vector) -> Result<DualVector> {
        self.check_dim(y.dim())?;
        if y.is_zero() {
            return Err(Error::ZeroVector);
        }
        let y0 = self.dual_vector_unchecked(y)?;
        Ok(DualVector {
            y0,
            attained: self.eval(y)?,
        })
    }

    fn dual_vector_unchecked(&self, y: &Vector) -> Result<Vector> {
        match self {
            NormSpec::Lp(e) => Ok(lp_dual_vector(*e, y)),
            NormSpec::Transformed { transform, base } => {
                let z0 = base.dual_vector_unchecked(&transform.apply(y)?)?;
                transform.apply_transpose(&z0)
            }
        }
    }

    /// A unit vector of this norm maximizing `Re(gᵀx)`; the maximum equals
    /// the dual norm of `g`.
    pub fn support_point(&self, g: &Vector) -> Result<Vector> {
        self.check_dim(g.dim())?;
        if g.is_zero() {
            return Err(Error::ZeroVector);
        }
        match self {
            NormSpec::Lp(e) => Ok(lp_dual_vector(e.conjugate(), g)),
            NormSpec::Transformed { transform, base } => {
                let u = base.support_point(&transform.apply_inverse_transpose(g)?)?;
                transform.apply_inverse(&u)
            }
        }
    }
}

impl fmt::Display for NormSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormSpec::Lp(e) => write!(f, "{e}"),
            NormSpec::Transformed { transform, base } => match transform {
                Transform::Scale(c) if c.im == 0.0 => write!(f, "scale:{}*{base}", c.re),
                Transform::Scale(c) => write!(f, "scale:({}{:+}i)*{base}", c.re, c.im),
                Transform::Linear { k, .. } => write!(f, "lin:<{}x{}>*{base}", k.rows(), k.cols()),
            },
        }
    }
}

/// Witness of the finite-dimensional Hahn-Banach statement for one vector.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct DualVector {
    pub y0: Vector,
    /// `y₀ᵀy`, equal to `‖y‖`.
    pub attained: f64,
}

pub fn norm_eval(spec: &NormSpec, x: &Vector) -> Result<f64> {
    spec.eval(x)
}

pub fn dual_norm_eval(spec: &NormSpec, y: &Vector) -> Result<f64> {
    spec.dual_eval(y)
}

pub fn dual_vector(spec: &NormSpec, y: &Vector) -> Result<DualVector> {
    spec.dual_vector(y)
}

/// R(a, b) between two ℓp norms on C^n: `max ‖x‖_a / ‖x‖_b`.
pub fn lp_ratio(a: Exponent, b: Exponent, n: usize) -> f64 {
    let gap = a.reciprocal() - b.reciprocal();
    if gap <= 0.0 {
        1.0
    } else {
        (n as f64).powf(gap)
    }
}

fn lp_eval(e: Exponent, x: &Vector) -> f64 {
    match e {
        Exponent::Infinity => x.max_abs(),
        Exponent::Finite(p) if p == 1.0 => x.iter().map(|z| z.norm()).sum(),
        Exponent::Finite(p) if p == 2.0 => x.euclidean(),
        Exponent::Finite(p) => {
            let s = x.max_abs();
            if s == 0.0 {
                return 0.0;
            }
            s * x.iter().map(|z| (z.norm() / s).powf(p)).sum::<f64>().powf(1.0 / p)
        }
    }
}

/// `conj(y_i)/|y_i|` or zero.
fn phase_conj(z: C64) -> C64 {
    let r = z.norm();
    if r == 0.0 {
        ZERO
    } else {
        z.conj() / r
    }
}

fn lp_dual_vector(e: Exponent, y: &Vector) -> Vector {
    let n = y.dim();
    let out: Vec<C64> = match e {
        Exponent::Finite(p) if p == 1.0 => y.iter().map(|&z| phase_conj(z)).collect(),
        Exponent::Infinity => {
            // Spread the weight evenly over every entry of maximal modulus.
            let m = y.max_abs();
            let count = y.iter().filter(|z| z.norm() == m).count() as f64;
            y.iter()
                .map(|&z| {
                    if z.norm() == m {
                        phase_conj(z) / count
                    } else {
                        ZERO
                    }
                })
                .collect()
        }
        Exponent::Finite(p) => {
            let s = y.max_abs();
            let u: Vec<f64> = y.iter().map(|z| z.norm() / s).collect();
            let norm = u.iter().map(|r| r.powf(p)).sum::<f64>().powf(1.0 / p);
            y.iter()
                .zip(&u)
                .map(|(&z, &r)| phase_conj(z) * (r / norm).powf(p - 1.0))
                .collect()
        }
    };
    debug_assert_eq!(out.len(), n);
    Vector::from_vec(out)
}

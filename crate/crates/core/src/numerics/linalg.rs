use rand::Rng;

use super::dense::{Matrix, Vector, C64, ONE, ZERO};
use super::random::{gaussian_vector, Seed};
use crate::error::{Error, Result};

/// Relative pivot threshold below which a matrix is declared singular.
pub const PIVOT_TOLERANCE: f64 = 1e-14;

/// Largest supported order for the power iteration.
pub const MAX_POWER_ORDER: usize = 64;

const POWER_CAP: usize = 100_000;
const POWER_TOLERANCE: f64 = 1e-10;
const RESTARTS: usize = 10;
// Extra seeded starts that always run alongside the all-ones start.
const GUARD_STARTS: usize = 2;
const SQUARE_EVERY: usize = 64;
const MAX_SQUARINGS: usize = 20;
const INTERNAL_SEED: Seed = Seed(0x5eed_0f_5ca1e);

/// Inverse by Gauss-Jordan elimination with partial pivoting.
pub fn invert(m: &Matrix) -> Result<Matrix> {
    let n = m.order()?;
    let scale = m.max_abs();
    let threshold = PIVOT_TOLERANCE * scale;
    let mut a: Vec<Vec<C64>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut inv: Vec<Vec<C64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { ONE } else { ZERO }).collect())
        .collect();

    for col in 0..n {
        let (pivot_row, magnitude) = (col..n)
            .map(|r| (r, a[r][col].norm()))
            .fold((col, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if scale == 0.0 || magnitude < threshold {
            return Err(Error::SingularMatrix {
                pivot: col,
                magnitude,
            });
        }
        a.swap(col, pivot_row);
        inv.swap(col, pivot_row);

        let p = a[col][col];
        for j in 0..n {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let f = a[r][col];
            if f == ZERO {
                continue;
            }
            for j in 0..n {
                let (ac, ic) = (a[col][j], inv[col][j]);
                a[r][j] -= f * ac;
                inv[r][j] -= f * ic;
            }
        }
    }
    Ok(Matrix::from_parts(n, n, inv.into_iter().flatten().collect()))
}

/// Max column absolute sum.
pub fn column_sum_norm(m: &Matrix) -> f64 {
    (0..m.cols())
        .map(|j| (0..m.rows()).map(|i| m.get(i, j).norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Max row absolute sum.
pub fn row_sum_norm(m: &Matrix) -> f64 {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// 1-norm condition number `‖M‖₁‖M⁻¹‖₁`.
pub fn condition_estimate(m: &Matrix) -> Result<f64> {
    let inv = invert(m)?;
    Ok(column_sum_norm(m) * column_sum_norm(&inv))
}

/// Largest singular value together with a unit right singular vector.
#[derive(Debug, Clone)]
pub struct TopSingular {
    pub value: f64,
    pub right: Vector,
}

pub fn max_singular_value(a: &Matrix) -> Result<f64> {
    top_singular(a).map(|t| t.value)
}

/// Power iteration on `A*A` from the normalized all-ones vector.
///
/// Two fixed seeded starts always run as well so that a start vector lying
/// in a lower invariant subspace cannot hide the top singular value. When a
/// start fails to reach the residual tolerance within the cap, up to ten
/// seeded restarts are tried before reporting `ConvergenceFailure`.
pub fn top_singular(a: &Matrix) -> Result<TopSingular> {
    let n = a.order()?;
    if n > MAX_POWER_ORDER {
        return Err(Error::InvalidArgument(format!(
            "power iteration supports n <= {MAX_POWER_ORDER}, got {n}"
        )));
    }
    let ones = Vector::ones(n).scale_real(1.0 / (n as f64).sqrt());
    if a.max_abs() == 0.0 {
        return Ok(TopSingular {
            value: 0.0,
            right: ones,
        });
    }
    // Normalizing by the largest entry keeps A*A away from overflow.
    let s = a.max_abs();
    let scaled = a.scale_real(1.0 / s);
    let gram = scaled.conj_transpose().mul(&scaled)?;

    let mut rng = INTERNAL_SEED.rng();
    let mut best: Option<(f64, Vector)> = None;
    let mut all_converged = true;
    let consider = |mu: f64, v: Vector, best: &mut Option<(f64, Vector)>| {
        if best.as_ref().is_none_or(|(b, _)| mu > *b) {
            *best = Some((mu, v));
        }
    };

    let first = power_from(&gram, ones);
    all_converged &= first.2;
    consider(first.0, first.1, &mut best);
    for _ in 0..GUARD_STARTS {
        let start = unit(gaussian_vector(n, false, &mut rng));
        let run = power_from(&gram, start);
        all_converged &= run.2;
        consider(run.0, run.1, &mut best);
    }

    if !all_converged {
        let mut recovered = false;
        for _ in 0..RESTARTS {
            let start = unit(gaussian_vector(n, rng.gen_bool(0.5), &mut rng));
            let run = power_from(&gram, start);
            if run.2 {
                recovered = true;
                consider(run.0, run.1, &mut best);
                break;
            }
            consider(run.0, run.1, &mut best);
        }
        if !recovered {
            let (mu, _) = best.expect("at least one start ran");
            return Err(Error::ConvergenceFailure {
                best: s * mu.max(0.0).sqrt(),
            });
        }
    }

    let (mu, v) = best.expect("at least one start ran");
    Ok(TopSingular {
        value: s * mu.max(0.0).sqrt(),
        right: v,
    })
}

fn unit(v: Vector) -> Vector {
    let len = v.euclidean();
    v.scale_real(1.0 / len)
}

/// Returns (Rayleigh quotient, vector, converged). The iterated operator is
/// squared periodically, which keeps the eigenvectors of `gram` while
/// sharpening the spectral gap.
fn power_from(gram: &Matrix, start: Vector) -> (f64, Vector, bool) {
    let mut op = gram.clone();
    let mut squarings = 0;
    let mut v = start;
    let mut best = (0.0, v.clone());
    for it in 1..=POWER_CAP {
        let w = gram.mul_vec(&v).expect("square operator");
        let mu = v.conj().bilinear(&w).expect("same dimension").re;
        if mu > best.0 {
            best = (mu, v.clone());
        }
        let residual = w.sub(&v.scale_real(mu)).expect("same dimension").euclidean();
        if mu <= 0.0 && w.euclidean() == 0.0 {
            return (0.0, v, true);
        }
        if residual <= POWER_TOLERANCE * mu {
            return (mu, v, true);
        }
        if it % SQUARE_EVERY == 0 && squarings < MAX_SQUARINGS {
            let sq = op.mul(&op).expect("square operator");
            let norm = sq.max_abs();
            if norm > 0.0 && norm.is_finite() {
                op = sq.scale_real(1.0 / norm);
                squarings += 1;
            }
        }
        let next = op.mul_vec(&v).expect("square operator");
        let len = next.euclidean();
        if len == 0.0 || !len.is_finite() {
            return (best.0, best.1, false);
        }
        v = next.scale_real(1.0 / len);
    }
    (best.0, best.1, false)
}

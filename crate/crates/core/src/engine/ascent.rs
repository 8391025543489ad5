//! Multistart ascent for `max ‖Ax‖_c` over the unit sphere of `d`.
//!
//! Each start alternates two moves, always renormalizing onto the sphere:
//!
//! 1. a linearization step: with `y₀` a dual vector of `Ax` under `c`, the
//!    function `x ↦ |y₀ᵀAx|` minorizes the objective and is maximized on the
//!    ball at the support point of `g = Aᵀy₀`. Convexity makes the objective
//!    non-decreasing along these steps;
//! 2. coordinate perturbations with a backtracking step length, which moves
//!    off stationary points that the linearization cannot leave.
//!
//! A start stops when a full round gains less than `STOP_GAIN` relatively.

use super::Reduced;
use crate::error::Result;
use crate::engine::GindOptions;
use crate::norms::NormSpec;
use crate::numerics::{gaussian_vector, top_singular, Matrix, Seed, Vector, C64, ONE};

const STOP_GAIN: f64 = 1e-10;
const RANDOM_STARTS: usize = 8;
const PHASE_SAMPLES: usize = 16;
const PHASE_GRID_MAX_ORDER: usize = 4;
const PHASE_GRID_KEEP: usize = 4;
const MAX_ROUNDS: usize = 60;
const MAX_LINEAR_STEPS: usize = 500;
const POLISH_START: f64 = 0.25;
const POLISH_END: f64 = 1e-9;
const POLISH_STAY: usize = 32;

pub(crate) struct Found {
    pub value: f64,
    pub witness: Vector,
}

pub(crate) fn maximize(
    a: &Matrix,
    d: &NormSpec,
    c: &NormSpec,
    reduced: &Reduced,
    seed: Seed,
    options: GindOptions,
) -> Result<Found> {
    let real = options.real_restriction;
    let starts = build_starts(reduced, seed, real)?;
    let problem = Problem { a, d, c, real };

    let mut best: Option<Found> = None;
    // Lowest start index wins ties: only a strictly larger value replaces.
    for start in starts {
        if start.is_zero() {
            continue;
        }
        let found = problem.climb(start)?;
        if best.as_ref().is_none_or(|b| found.value > b.value) {
            best = Some(found);
        }
    }
    Ok(best.unwrap_or_else(|| Found {
        value: 0.0,
        witness: Vector::basis(reduced.n, 0).expect("n >= 1"),
    }))
}

fn build_starts(r: &Reduced, seed: Seed, real: bool) -> Result<Vec<Vector>> {
    let n = r.n;
    let mut starts = Vec::new();
    for j in 0..n {
        starts.push(r.pull_back(&Vector::basis(n, j)?));
    }
    let top = top_singular(&r.m)?;
    let mut v = top.right;
    if real {
        v = realify(&v);
    }
    starts.push(r.pull_back(&v));
    for i in 0..RANDOM_STARTS {
        let mut rng = seed.derive(i as u64).rng();
        starts.push(gaussian_vector(n, real, &mut rng));
    }
    if !real && r.domain.is_infinity() && (2..=PHASE_GRID_MAX_ORDER).contains(&n) {
        starts.extend(phase_grid(r).iter().map(|u| r.pull_back(u)));
    }
    Ok(starts)
}

/// Rotates away the global phase of the largest entry, then drops the
/// imaginary part.
fn realify(v: &Vector) -> Vector {
    let big = v
        .iter()
        .copied()
        .fold(C64::new(0.0, 0.0), |acc, z| if z.norm() > acc.norm() { z } else { acc });
    if big.norm() == 0.0 {
        return v.clone();
    }
    let phase = big.conj() / big.norm();
    Vector::from_vec(v.iter().map(|z| C64::new((z * phase).re, 0.0)).collect())
}

/// Best points of a coarse phase grid on the vertices of the reduced
/// ℓ∞ sphere: first coordinate fixed to 1, the rest `exp(2πik/16)`.
fn phase_grid(r: &Reduced) -> Vec<Vector> {
    let n = r.n;
    let total = PHASE_SAMPLES.pow((n - 1) as u32);
    let phases: Vec<C64> = (0..PHASE_SAMPLES)
        .map(|k| C64::from_polar(1.0, std::f64::consts::TAU * k as f64 / PHASE_SAMPLES as f64))
        .collect();
    let mut scored: Vec<(f64, usize)> = (0..total)
        .map(|idx| (r.objective(&grid_point(idx, n, &phases)), idx))
        .collect();
    scored.sort_by(|x, y| y.0.total_cmp(&x.0).then(x.1.cmp(&y.1)));
    scored
        .iter()
        .take(PHASE_GRID_KEEP)
        .map(|&(_, idx)| grid_point(idx, n, &phases))
        .collect()
}

fn grid_point(mut idx: usize, n: usize, phases: &[C64]) -> Vector {
    let mut out = vec![ONE; n];
    for slot in out.iter_mut().skip(1) {
        *slot = phases[idx % phases.len()];
        idx /= phases.len();
    }
    Vector::from_vec(out)
}

struct Problem<'a> {
    a: &'a Matrix,
    d: &'a NormSpec,
    c: &'a NormSpec,
    real: bool,
}

impl Problem<'_> {
    fn value(&self, x: &Vector) -> Result<f64> {
        self.c.eval(&self.a.mul_vec(x)?)
    }

    fn normalize(&self, x: &Vector) -> Result<Option<Vector>> {
        let len = self.d.eval(x)?;
        if len == 0.0 || !len.is_finite() {
            return Ok(None);
        }
        Ok(Some(x.scale_real(1.0 / len)))
    }

    fn climb(&self, start: Vector) -> Result<Found> {
        let Some(mut x) = self.normalize(&start)? else {
            return Ok(Found {
                value: 0.0,
                witness: start,
            });
        };
        let mut f = self.value(&x)?;
        for _ in 0..MAX_ROUNDS {
            let before = f;
            self.linear_steps(&mut x, &mut f)?;
            self.polish(&mut x, &mut f)?;
            if f <= before * (1.0 + STOP_GAIN) {
                break;
            }
        }
        Ok(Found {
            value: f,
            witness: x,
        })
    }

    fn linear_steps(&self, x: &mut Vector, f: &mut f64) -> Result<()> {
        let at = self.a.transpose();
        for _ in 0..MAX_LINEAR_STEPS {
            let y = self.a.mul_vec(x)?;
            if y.is_zero() {
                return Ok(());
            }
            let y0 = self.c.dual_vector(&y)?.y0;
            let g = at.mul_vec(&y0)?;
            if g.is_zero() {
                return Ok(());
            }
            let Some(next) = self.normalize(&self.d.support_point(&g)?)? else {
                return Ok(());
            };
            let value = self.value(&next)?;
            if value <= *f {
                return Ok(());
            }
            let gain = if *f > 0.0 { (value - *f) / *f } else { f64::INFINITY };
            *x = next;
            *f = value;
            if gain < STOP_GAIN {
                return Ok(());
            }
        }
        Ok(())
    }

    fn polish(&self, x: &mut Vector, f: &mut f64) -> Result<()> {
        let n = x.dim();
        let mut dirs = vec![ONE, -ONE];
        if !self.real {
            dirs.extend([C64::new(0.0, 1.0), C64::new(0.0, -1.0)]);
        }
        let mut h = POLISH_START;
        let mut stay = 0;
        while h > POLISH_END {
            let scale = x.max_abs();
            let mut improved = false;
            for i in 0..n {
                for &dir in &dirs {
                    let mut e = Vector::zeros(n).into_vec();
                    e[i] = dir * (h * scale);
                    let trial = x.add(&Vector::from_vec(e))?;
                    let Some(trial) = self.normalize(&trial)? else {
                        continue;
                    };
                    let value = self.value(&trial)?;
                    if value > *f {
                        *x = trial;
                        *f = value;
                        improved = true;
                    }
                }
            }
            stay += 1;
            if !improved || stay >= POLISH_STAY {
                h *= 0.5;
                stay = 0;
            }
        }
        Ok(())
    }
}

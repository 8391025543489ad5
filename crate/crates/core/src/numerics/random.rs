use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use super::dense::{Matrix, Vector, C64};
use crate::error::{Error, Result};

pub type Rng = ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Seed(pub u64);

impl Seed {
    pub fn rng(self) -> Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }

    /// Independent child seed for stream `index` (splitmix64 finalizer).
    pub fn derive(self, index: u64) -> Seed {
        let mut z = self
            .0
            .wrapping_add(0x9e37_79b9_7f4a_7c15u64.wrapping_mul(index.wrapping_add(1)));
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        Seed(z ^ (z >> 31))
    }
}

impl From<u64> for Seed {
    fn from(v: u64) -> Self {
        Seed(v)
    }
}

fn gaussian(rng: &mut Rng) -> f64 {
    StandardNormal.sample(rng)
}

pub fn gaussian_scalar(real: bool, rng: &mut Rng) -> C64 {
    let re = gaussian(rng);
    let im = if real { 0.0 } else { gaussian(rng) };
    C64::new(re, im)
}

pub fn gaussian_vector(n: usize, real: bool, rng: &mut Rng) -> Vector {
    Vector::from_vec((0..n).map(|_| gaussian_scalar(real, rng)).collect())
}

pub fn gaussian_matrix(n: usize, real: bool, rng: &mut Rng) -> Matrix {
    Matrix::from_parts(n, n, (0..n * n).map(|_| gaussian_scalar(real, rng)).collect())
}

/// Unitary from orthonormalizing the columns of a seeded complex Gaussian
/// matrix (modified Gram-Schmidt, two passes).
pub fn random_unitary(n: usize, seed: Seed) -> Result<Matrix> {
    if n == 0 {
        return Err(Error::EmptyDimension);
    }
    let mut rng = seed.rng();
    loop {
        let g = gaussian_matrix(n, false, &mut rng);
        if let Some(u) = orthonormalize_columns(&g) {
            return Ok(u);
        }
    }
}

fn orthonormalize_columns(g: &Matrix) -> Option<Matrix> {
    let n = g.rows();
    let mut cols: Vec<Vec<C64>> = (0..n).map(|j| g.column(j).into_vec()).collect();
    for j in 0..n {
        for _pass in 0..2 {
            for k in 0..j {
                let proj: C64 = cols[k]
                    .iter()
                    .zip(&cols[j])
                    .map(|(q, v)| q.conj() * v)
                    .sum();
                let qk = cols[k].clone();
                for (v, q) in cols[j].iter_mut().zip(&qk) {
                    *v -= proj * q;
                }
            }
        }
        let len = Vector::from_vec(cols[j].clone()).euclidean();
        if len < 1e-8 {
            return None;
        }
        cols[j].iter_mut().for_each(|v| *v /= len);
    }
    let mut out = Matrix::zeros(n, n);
    for (j, col) in cols.iter().enumerate() {
        for (i, &z) in col.iter().enumerate() {
            out.set(i, j, z);
        }
    }
    Some(out)
}

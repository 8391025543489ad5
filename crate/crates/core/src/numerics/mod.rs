//! Self-contained complex linear algebra: dense storage, inversion, the
//! largest singular value, and seeded randomness.

mod dense;
mod linalg;
mod random;

pub use dense::{Matrix, Vector, C64};
pub(crate) use dense::{check_dim, ONE, ZERO};
pub use linalg::{
    column_sum_norm, condition_estimate, invert, max_singular_value, row_sum_norm, top_singular,
    TopSingular, MAX_POWER_ORDER, PIVOT_TOLERANCE,
};
pub use random::{gaussian_matrix, gaussian_scalar, gaussian_vector, random_unitary, Rng, Seed};

//! Generalized induced matrix norms `‖A‖ = max{‖Ax‖_c : ‖x‖_d = 1}` on C^n.
//!
//! The crate is layered bottom-up:
//!
//! * [`numerics`]: dense complex matrices, inversion, σ_max, seeded RNG.
//! * [`norms`]: composable vector norms, their duals and dual vectors.
//! * [`engine`]: g-ind norms with certified lower/upper bounds.
//! * [`lab`]: constructive checks of structural results about g-ind norms.

pub mod engine;
pub mod lab;
pub mod error;
pub mod norms;
pub mod numerics;

pub use error::{Error, Result};

//! Bound states of the well V(x) = V0 + V1/√x + 21ħ²/(32m x²).
//!
//! The spectrum follows from a transcendental equation in Hermite functions of
//! real order; approximations, the bi-confluent Heun derivation and independent
//! oracles (Numerov shooting, double-double evaluation, exact determinants)
//! live alongside.

// `!(x > 0.0)` deliberately rejects NaN along with non-positive values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod heun;
pub mod numeric;
pub mod oracle;
pub mod rootfind;
pub mod specfun;
pub mod spectrum;
pub mod verify;
pub mod wavefunction;

pub use error::{Error, Result};

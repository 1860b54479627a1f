//! Gamma, Kummer M, Tricomi U, Hermite functions of real order and Airy
//! functions, each returning a value with an error estimate and flags.

mod airy;
mod eval;
mod gamma;
mod hermite;
mod kummer;
pub(crate) mod ode;
mod tricomi;

pub use airy::{airy_ai, airy_bi, AI0, AIP0};
pub use eval::{EvalFlags, EvalResult, CANCELLATION_THRESHOLD};
pub use gamma::{cos_pi, gamma, ln_gamma_abs, rgamma, sin_pi, GAMMA_MAX_ARG};
pub use hermite::hermite_h;
pub use kummer::kummer_m;
pub use tricomi::tricomi_u;

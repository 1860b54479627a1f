//! Independent references: double-double special functions, a Numerov
//! shooting eigensolver, and exact termination determinants.

pub mod dd;
pub mod highprec;
pub mod numerov;
pub mod qpoly;
pub mod wronskian;

pub use dd::DoubleDouble;
pub use highprec::{highprec_hermite, HighPrec};
pub use numerov::{numerov_eigen, numerov_wavefunction, ShootingConfig};
pub use qpoly::{qpoly_determinant, qpoly_numeric_determinant, MultiPoly};
pub use wronskian::highprec_wronskian;

use crate::error::Result;
use crate::specfun::{hermite_h, EvalResult};

/// Relative error above which a double-precision Hermite value is replaced.
const FALLBACK_REL: f64 = 1e-12;
const FALLBACK_DIGITS: u32 = 24;

/// `hermite_h`, re-evaluated in double-double when the double result is
/// flagged or its error estimate is above 1e-12 relative.
pub fn hermite_with_fallback(nu: f64, z: f64) -> Result<EvalResult> {
    let h = hermite_h(nu, z)?;
    if h.flags.cancellation_warning || h.rel_error() > FALLBACK_REL {
        if let Ok(hp) = highprec_hermite(nu, z, FALLBACK_DIGITS) {
            let v = hp.to_f64();
            return Ok(EvalResult::converged(
                v,
                hp.abs_error + 0.5 * f64::EPSILON * v.abs(),
            ));
        }
    }
    Ok(h)
}

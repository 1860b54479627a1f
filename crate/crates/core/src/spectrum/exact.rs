use rayon::prelude::*;

use super::system::{energy_of_a, PhysicalSystem};
use super::{Method, SpectralLevel};
use crate::error::{Error, Result};
use crate::oracle::hermite_with_fallback;
use crate::rootfind::{refine, scan_brackets, Sample};
use crate::specfun::{hermite_h, EvalResult};
use crate::wavefunction::decaying_amplitude_ratio;

/// Absolute tolerance on refined roots in a.
pub const ROOT_TOL: f64 = 1e-10;

const SCAN_START: f64 = 0.05;
const SCAN_STEP: f64 = 0.1;
/// A root whose decaying solution is smaller than this, relative to its parts,
/// carries no bound state.
const RUDIMENTARY_AMPLITUDE: f64 = 1e-6;

/// F(a) = (1+2a) H_{a-1/2}(-√(2a)) + √(2a) H_{a+1/2}(-√(2a)).
pub fn exact_spectrum_fn(a: f64) -> Result<EvalResult> {
    if !(a > 0.0) {
        return Err(Error::Domain(format!(
            "spectrum function needs a > 0, got {a}"
        )));
    }
    let s = (2.0 * a).sqrt();
    let h_lo = hermite_with_fallback(a - 0.5, -s)?;
    let h_hi = hermite_with_fallback(a + 0.5, -s)?;
    let t1 = (1.0 + 2.0 * a) * h_lo.value;
    let t2 = s * h_hi.value;
    let value = t1 + t2;
    let err = (1.0 + 2.0 * a) * h_lo.abs_error_estimate
        + s * h_hi.abs_error_estimate
        + 2.0 * f64::EPSILON * (t1.abs() + t2.abs());
    let mut r = EvalResult::converged(value, err);
    r.merge_flags(&h_lo);
    r.merge_flags(&h_hi);
    Ok(r)
}

/// |(1+2a) H_{a-1/2}| + |√(2a) H_{a+1/2}| at -√(2a), the scale against which
/// F(a) is judged small.
pub fn exact_spectrum_scale(a: f64) -> Result<f64> {
    let s = (2.0 * a).sqrt();
    Ok((1.0 + 2.0 * a) * hermite_h(a - 0.5, -s)?.value.abs()
        + s * hermite_h(a + 0.5, -s)?.value.abs())
}

/// Every root found on a scan, split by the wavefunction criterion.
#[derive(Debug, Clone, PartialEq)]
pub struct RootScan {
    /// Physical levels, n = 1, 2, ...
    pub levels: Vec<SpectralLevel>,
    /// Roots whose decaying solution vanishes identically.
    pub rudimentary: Vec<f64>,
    /// Set when a bracket could not be refined; `levels` then holds the roots below it.
    pub failure: Option<Error>,
}

fn refine_bracket(lo: f64, hi: f64) -> Result<f64> {
    refine(
        |a| {
            let f = exact_spectrum_fn(a)?;
            Ok(Sample {
                value: f.value,
                abs_error: f.abs_error_estimate,
            })
        },
        lo,
        hi,
        ROOT_TOL,
    )
}

/// Scan for the first `n_max` physical roots, refining brackets in parallel.
pub fn scan_roots(sys: &PhysicalSystem, n_max: usize) -> Result<RootScan> {
    sys.require_well()?;
    if n_max == 0 {
        return Err(Error::Domain("n_max must be at least 1".into()));
    }
    let mut end = n_max as f64 + 2.0;
    loop {
        let brackets = scan_brackets(
            |a| Ok(exact_spectrum_fn(a)?.value),
            SCAN_START,
            end,
            SCAN_STEP,
        )?;
        let refined: Vec<Result<f64>> = brackets
            .par_iter()
            .map(|&(lo, hi)| refine_bracket(lo, hi))
            .collect();
        let mut levels = Vec::new();
        let mut rudimentary = Vec::new();
        let mut failure = None;
        for r in refined {
            let a = match r {
                Ok(a) => a,
                Err(Error::PrecisionExhausted { reason, .. }) => {
                    failure = Some(Error::PrecisionExhausted {
                        found: levels.len(),
                        reason,
                    });
                    break;
                }
                Err(e) => return Err(e),
            };
            if decaying_amplitude_ratio(a)? < RUDIMENTARY_AMPLITUDE {
                rudimentary.push(a);
                continue;
            }
            if levels.len() < n_max {
                levels.push(SpectralLevel {
                    n: levels.len() + 1,
                    a_n: a,
                    energy: energy_of_a(sys, a)?,
                    method: Method::Exact,
                });
            }
        }
        if levels.len() >= n_max || failure.is_some() {
            return Ok(RootScan {
                levels,
                rudimentary,
                failure,
            });
        }
        end += n_max as f64;
    }
}

/// The first `n_max` bound-state roots with their energies.
pub fn find_roots(sys: &PhysicalSystem, n_max: usize) -> Result<Vec<SpectralLevel>> {
    let scan = scan_roots(sys, n_max)?;
    match scan.failure {
        Some(e) => Err(e),
        None => Ok(scan.levels),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_is_a_root() {
        let f = exact_spectrum_fn(0.5).unwrap();
        assert!(f.value.abs() < 1e-10 * exact_spectrum_scale(0.5).unwrap());
    }

    #[test]
    fn single_sign_change_near_three_halves() {
        let b = scan_brackets(|a| Ok(exact_spectrum_fn(a).unwrap().value), 1.2, 1.7, 0.01).unwrap();
        assert_eq!(b.len(), 1);
    }

    #[test]
    fn first_roots() {
        let scan = scan_roots(&PhysicalSystem::default(), 3).unwrap();
        assert_eq!(scan.rudimentary.len(), 1);
        assert!((scan.rudimentary[0] - 0.5).abs() < 1e-9);
        let a: Vec<f64> = scan.levels.iter().map(|l| l.a_n).collect();
        let want = [
            1.437_276_542_458_184_9,
            2.412_479_686_934_334,
            3.398_664_825_093_449_4,
        ];
        for (x, w) in a.iter().zip(want) {
            assert!((x - w).abs() < 1e-10, "{x} vs {w}");
        }
    }
}

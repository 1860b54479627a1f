use super::eval::{EvalFlags, EvalResult};
use super::gamma::{ln_gamma_abs, rgamma};
use crate::error::{Error, Result};
use crate::numeric::CompensatedSum;

pub(crate) const SERIES_TOL: f64 = 1e-16;
pub(crate) const MAX_TERMS: usize = 10_000;

pub(crate) fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x.fract() == 0.0
}

/// Power series of ₁F₁ with compensated summation.
pub(crate) fn m_series(a: f64, b: f64, z: f64) -> EvalResult {
    let mut acc = CompensatedSum::new();
    let mut term = 1.0;
    acc.add(term);
    let mut small = 0;
    let mut converged = false;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        term *= (a + nf) / (b + nf) * z / (nf + 1.0);
        acc.add(term);
        if term == 0.0 {
            converged = true;
            break;
        }
        if term.abs() < SERIES_TOL * acc.value().abs() {
            small += 1;
            if small >= 2 {
                converged = true;
                break;
            }
        } else {
            small = 0;
        }
    }
    let value = acc.value();
    let err = acc.compensation() + 2.0 * f64::EPSILON * acc.abs_sum() + 2.0 * term.abs();
    let mut r = EvalResult {
        value,
        abs_error_estimate: err,
        flags: EvalFlags {
            converged,
            ..EvalFlags::default()
        },
    };
    if !converged {
        r.abs_error_estimate = f64::INFINITY;
    }
    r.with_cancellation_check(acc.max_term())
}

/// Leading large-z form: M ≈ Γ(b)/Γ(a) e^z z^{a-b} ₂F₀(b-a, 1-a; ; 1/z).
/// Returns None when the subdominant algebraic part is not negligible or the
/// divergent series cannot reach the tolerance.
fn m_asymptotic(a: f64, b: f64, z: f64) -> Option<EvalResult> {
    if is_nonpositive_integer(a) || is_nonpositive_integer(b - a) {
        return None;
    }
    let ln_dom = z + (a - b) * z.ln() + ln_gamma_abs(b) - ln_gamma_abs(a);
    let ln_sub = -a * z.ln() + ln_gamma_abs(b) - ln_gamma_abs(b - a);
    if ln_sub - ln_dom > (SERIES_TOL * 0.1).ln() {
        return None;
    }
    let mut acc = CompensatedSum::new();
    let mut term: f64 = 1.0;
    acc.add(term);
    let mut converged = false;
    for n in 0..200 {
        let nf = n as f64;
        let next = term * (b - a + nf) * (1.0 - a + nf) / ((nf + 1.0) * z);
        if next.abs() > term.abs() {
            break;
        }
        term = next;
        acc.add(term);
        if term.abs() < SERIES_TOL * acc.value().abs() {
            converged = true;
            break;
        }
    }
    if !converged {
        return None;
    }
    if ln_dom > 709.0 {
        return None;
    }
    let sign = rgamma(a).signum() * rgamma(b).signum();
    let scale = sign * ln_dom.exp();
    let value = scale * acc.value();
    let err = value.abs() * (8.0 * f64::EPSILON * (1.0 + z.ln().abs() * (a - b).abs()))
        + scale.abs() * term.abs();
    Some(EvalResult::converged(value, err))
}

/// Kummer's confluent hypergeometric function ₁F₁(a; b; z).
pub fn kummer_m(a: f64, b: f64, z: f64) -> Result<EvalResult> {
    if a.is_nan() || b.is_nan() || z.is_nan() {
        return Err(Error::Parameter {
            function: "kummer_m",
            reason: "NaN argument".into(),
        });
    }
    if is_nonpositive_integer(b) {
        return Err(Error::Parameter {
            function: "kummer_m",
            reason: format!("b = {b} is a pole of the series"),
        });
    }
    if z == 0.0 || a == 0.0 {
        return Ok(EvalResult::exact(1.0));
    }
    let result = if z < 0.0 && !is_nonpositive_integer(a) {
        // Kummer transformation makes the terms of one sign when b > a
        let inner = m_series(b - a, b, -z);
        if z < -745.0 {
            EvalResult::converged(0.0, 0.0)
        } else {
            inner.scale(z.exp())
        }
    } else if z > 50.0 + (a.abs() + b.abs()).powi(2) {
        match m_asymptotic(a, b, z) {
            Some(r) => r,
            None => m_series(a, b, z),
        }
    } else {
        m_series(a, b, z)
    };
    if !result.value.is_finite() {
        return Err(Error::Overflow {
            function: "kummer_m",
            at: z,
        });
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_argument_is_one() {
        assert_eq!(kummer_m(2.3, -0.5, 0.0).unwrap().value, 1.0);
    }

    #[test]
    fn exponential_identity() {
        let r = kummer_m(1.0, 1.0, 2.5).unwrap();
        assert!((r.value - 2.5f64.exp()).abs() < 1e-14 * 2.5f64.exp());
        let r = kummer_m(1.0, 1.0, -7.0).unwrap();
        assert!((r.value - (-7f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn terminating_series() {
        let r = kummer_m(-1.0, 1.5, 4.0).unwrap();
        assert!((r.value + 5.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn pole_in_b_is_rejected() {
        assert!(kummer_m(0.5, -2.0, 1.0).is_err());
    }

    #[test]
    fn asymptotic_matches_series_at_switchover() {
        // both regimes are valid near z = 60 for small parameters
        let s = m_series(0.3, 1.7, 60.0);
        let a = m_asymptotic(0.3, 1.7, 60.0).unwrap();
        assert!((s.value - a.value).abs() < 1e-12 * s.value.abs());
    }

    #[test]
    fn cancellation_is_flagged() {
        // direct series for e^{-30}: terms near 1e12 against a value near 1e-13
        let r = m_series(1.0, 1.0, -30.0);
        assert!(r.flags.cancellation_warning);
        assert!(
            !kummer_m(1.0, 1.0, -30.0)
                .unwrap()
                .flags
                .cancellation_warning
        );
    }
}

use std::f64::consts::PI;

use super::eval::EvalResult;
use crate::error::{Error, Result};

// Lanczos approximation, g = 607/128, 15 terms.
const LANCZOS_G: f64 = 607.0 / 128.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEF: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_923_5,
    -59.597_960_355_475_491_2,
    14.136_097_974_741_747_2,
    -0.491_913_816_097_620_2,
    0.339_946_499_848_118_9e-4,
    0.465_236_289_270_485_8e-4,
    -0.983_744_753_048_795_6e-4,
    0.158_088_703_224_912_5e-3,
    -0.210_264_441_724_104_9e-3,
    0.217_439_618_115_212_6e-3,
    -0.164_318_106_536_763_9e-3,
    0.844_182_239_838_527_4e-4,
    -0.261_908_384_015_814_1e-4,
    0.368_991_826_595_316_2e-5,
];
const SQRT_2PI: f64 = 2.506_628_274_631_000_7;

/// Largest argument for which Γ(x) is finite in f64.
pub const GAMMA_MAX_ARG: f64 = 171.624_376_956_302_7;

/// `sin(πx)` with exact argument reduction.
pub fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).round();
    if r == 0.0 || r.abs() == 1.0 {
        return 0.0;
    }
    if r.abs() == 0.5 {
        return r.signum();
    }
    (PI * r).sin()
}

/// `cos(πx)` with exact argument reduction.
pub fn cos_pi(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).round();
    if r.abs() == 0.5 {
        return 0.0;
    }
    (PI * r).cos()
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x.fract() == 0.0
}

fn lanczos_sum(x: f64) -> f64 {
    // x is the shifted argument: Γ(x + 1)
    let mut a = LANCZOS_COEF[0];
    for (k, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        a += c / (x + k as f64);
    }
    a
}

/// Γ(x) for x >= 0.5 without reflection.
fn gamma_positive(x: f64) -> f64 {
    if x.fract() == 0.0 && x <= 23.0 {
        // exact in f64 up to 22!
        let mut p = 1.0;
        let mut k = 2.0;
        while k < x {
            p *= k;
            k += 1.0;
        }
        return p;
    }
    let xm = x - 1.0;
    let t = xm + LANCZOS_G + 0.5;
    let half = 0.5 * (xm + 0.5);
    let pw = t.powf(half);
    SQRT_2PI * pw * ((-t).exp() * pw) * lanczos_sum(xm)
}

/// Γ(x) to about 14 significant digits over [-30, 171.6].
pub fn gamma(x: f64) -> Result<EvalResult> {
    if x.is_nan() {
        return Err(Error::Parameter {
            function: "gamma",
            reason: "NaN argument".into(),
        });
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Pole {
            function: "gamma",
            at: x,
        });
    }
    if x > GAMMA_MAX_ARG {
        return Err(Error::Overflow {
            function: "gamma",
            at: x,
        });
    }
    let (value, rel) = if x >= 0.5 {
        (
            gamma_positive(x),
            4.0 * f64::EPSILON * (1.0 + x.abs().ln().max(0.0)),
        )
    } else {
        let s = sin_pi(x);
        let g = gamma_positive(1.0 - x);
        (PI / (s * g), 8.0 * f64::EPSILON * (1.0 + x.abs()))
    };
    if !value.is_finite() {
        return Err(Error::Overflow {
            function: "gamma",
            at: x,
        });
    }
    Ok(EvalResult::converged(value, value.abs() * rel))
}

/// 1/Γ(x), which is entire: zero at the poles of Γ.
pub fn rgamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        return 0.0;
    }
    if x > GAMMA_MAX_ARG {
        return (-ln_gamma_abs(x)).exp();
    }
    if x < 0.5 {
        // Γ(x) = π / (sin(πx) Γ(1-x)) so 1/Γ(x) = sin(πx) Γ(1-x) / π
        let one_minus = 1.0 - x;
        if one_minus > GAMMA_MAX_ARG {
            return sin_pi(x) * (ln_gamma_abs(one_minus)).exp() / PI;
        }
        return sin_pi(x) * gamma_positive(one_minus) / PI;
    }
    1.0 / gamma_positive(x)
}

/// ln|Γ(x)|.
pub fn ln_gamma_abs(x: f64) -> f64 {
    if x < 0.5 {
        return PI.ln() - sin_pi(x).abs().ln() - ln_gamma_abs(1.0 - x);
    }
    let xm = x - 1.0;
    let t = xm + LANCZOS_G + 0.5;
    SQRT_2PI.ln() + (xm + 0.5) * t.ln() - t + lanczos_sum(xm).ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn gamma_one_is_one() {
        assert_eq!(gamma(1.0).unwrap().value, 1.0);
    }

    #[test]
    fn gamma_half_is_sqrt_pi() {
        let g = gamma(0.5).unwrap().value;
        assert!(rel(g, PI.sqrt()) < 1e-14, "{g}");
        assert!((g - 1.772_453_850_9).abs() < 1e-10);
    }

    #[test]
    fn factorials_and_recurrence() {
        assert_eq!(gamma(6.0).unwrap().value, 120.0);
        for &x in &[0.3, 2.7, 13.1, 57.4, -3.6, -17.25] {
            let lhs = gamma(x + 1.0).unwrap().value;
            let rhs = x * gamma(x).unwrap().value;
            assert!(rel(lhs, rhs) < 1e-13, "x = {x}");
        }
    }

    #[test]
    fn poles_and_overflow_are_errors() {
        assert!(matches!(gamma(0.0), Err(Error::Pole { .. })));
        assert!(matches!(gamma(-4.0), Err(Error::Pole { .. })));
        assert!(matches!(gamma(172.0), Err(Error::Overflow { .. })));
        assert!(gamma(170.5).is_ok());
    }

    #[test]
    fn reciprocal_vanishes_at_poles() {
        assert_eq!(rgamma(-3.0), 0.0);
        assert!(rel(rgamma(4.5), 1.0 / gamma(4.5).unwrap().value) < 1e-15);
        assert!(rel(rgamma(-2.5), 1.0 / gamma(-2.5).unwrap().value) < 1e-14);
    }

    #[test]
    fn ln_gamma_matches_gamma() {
        for &x in &[0.7, 3.3, 25.0, 150.2, -2.4] {
            let g = gamma(x).unwrap().value.abs().ln();
            assert!(
                (ln_gamma_abs(x) - g).abs() < 1e-12 * g.abs().max(1.0),
                "x = {x}"
            );
        }
    }

    #[test]
    fn sin_pi_exact_at_integers() {
        assert_eq!(sin_pi(7.0), 0.0);
        assert_eq!(sin_pi(-3.5), 1.0);
        assert_eq!(cos_pi(2.5), 0.0);
    }
}

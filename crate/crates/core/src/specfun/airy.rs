use std::f64::consts::PI;

use super::eval::EvalResult;
use super::ode::LinearOde2;
use crate::error::{Error, Result};
use crate::numeric::CompensatedSum;

/// Ai(0) = 3^{-2/3}/Γ(2/3).
pub const AI0: f64 = 0.355_028_053_887_817_2;
/// -Ai'(0) = 3^{-1/3}/Γ(1/3).
pub const AIP0: f64 = 0.258_819_403_792_806_8;

const MACLAURIN_LEFT: f64 = -5.0;
const AI_MACLAURIN_RIGHT: f64 = 2.0;
/// ζ = (2/3) x^{3/2} above which the exponential expansions are used directly.
const ZETA_ASYMPTOTIC: f64 = 18.0;
const OSCILLATORY_ASYMPTOTIC: f64 = -50.0;
const BI_OVERFLOW: f64 = 104.0;

#[derive(Debug, Clone, Copy)]
struct Pair {
    f: f64,
    g: f64,
    df: f64,
    dg: f64,
    peak: f64,
}

/// f = Σ 3^k (1/3)_k x^{3k}/(3k)!, g = Σ 3^k (2/3)_k x^{3k+1}/(3k+1)! and derivatives.
fn maclaurin(x: f64) -> Pair {
    let x3 = x * x * x;
    let (mut f, mut g, mut df, mut dg) = (
        CompensatedSum::new(),
        CompensatedSum::new(),
        CompensatedSum::new(),
        CompensatedSum::new(),
    );
    let (mut tf, mut tg, mut tdf, mut tdg) = (1.0, x, 0.5 * x * x, 1.0);
    f.add(tf);
    g.add(tg);
    df.add(tdf);
    dg.add(tdg);
    for k in 0..200 {
        let k3 = 3.0 * k as f64;
        tf *= x3 / ((k3 + 2.0) * (k3 + 3.0));
        tg *= x3 / ((k3 + 3.0) * (k3 + 4.0));
        tdf *= x3 / ((k3 + 3.0) * (k3 + 5.0));
        tdg *= x3 / ((k3 + 1.0) * (k3 + 3.0));
        f.add(tf);
        g.add(tg);
        df.add(tdf);
        dg.add(tdg);
        let tol = 1e-17;
        if tf.abs() <= tol * f.value().abs()
            && tg.abs() <= tol * g.value().abs().max(f64::MIN_POSITIVE)
            && tdf.abs() <= tol * df.value().abs().max(f64::MIN_POSITIVE)
            && tdg.abs() <= tol * dg.value().abs()
        {
            break;
        }
    }
    let peak = f.max_term().max(g.max_term());
    Pair {
        f: f.value(),
        g: g.value(),
        df: df.value(),
        dg: dg.value(),
        peak,
    }
}

fn ai_maclaurin(x: f64) -> (f64, f64, f64) {
    let p = maclaurin(x);
    (
        AI0 * p.f - AIP0 * p.g,
        AI0 * p.df - AIP0 * p.dg,
        p.peak * AI0,
    )
}

fn bi_maclaurin(x: f64) -> (f64, f64, f64) {
    let p = maclaurin(x);
    let s = 3f64.sqrt();
    (
        s * (AI0 * p.f + AIP0 * p.g),
        s * (AI0 * p.df + AIP0 * p.dg),
        s * p.peak * AI0,
    )
}

/// u_k coefficients of the Airy asymptotic expansions.
fn u_coeffs(n: usize) -> Vec<f64> {
    let mut u = vec![1.0];
    for k in 1..=n {
        let kf = k as f64;
        let next = u[k - 1] * (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0)
            / ((2.0 * kf - 1.0) * 216.0 * kf);
        u.push(next);
    }
    u
}

/// Ai and Ai' for large positive x from the exponential expansion.
fn ai_asymptotic_right(x: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * x.powf(1.5);
    let u = u_coeffs(40);
    let (mut s, mut sd) = (1.0, 1.0);
    let mut pw = 1.0;
    let mut last = f64::INFINITY;
    for (k, uk) in u.iter().enumerate().skip(1) {
        pw /= -zeta;
        let kf = k as f64;
        let t = uk * pw;
        if t.abs() > last {
            break;
        }
        last = t.abs();
        s += t;
        sd += -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * t;
        if t.abs() < 1e-17 {
            break;
        }
    }
    let e = (-zeta).exp() / (2.0 * PI.sqrt());
    let q = x.powf(0.25);
    (e / q * s, -e * q * sd)
}

/// Ai, Bi for large negative x from the oscillatory expansions.
fn airy_asymptotic_left(x: f64) -> (f64, f64) {
    let t = -x;
    let zeta = 2.0 / 3.0 * t.powf(1.5);
    let u = u_coeffs(40);
    let (mut p, mut q) = (0.0, 0.0);
    let mut pw = 1.0;
    for (k, uk) in u.iter().enumerate() {
        let term = uk * pw;
        if term.abs() < 1e-17 {
            break;
        }
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * term;
        } else {
            q += sign * term;
        }
        pw /= zeta;
    }
    let phase = zeta - PI / 4.0;
    let pre = 1.0 / (PI.sqrt() * t.powf(0.25));
    let (s, c) = phase.sin_cos();
    (pre * (c * p + s * q), pre * (-s * p + c * q))
}

fn check_nan(x: f64, function: &'static str) -> Result<()> {
    if x.is_nan() {
        return Err(Error::Parameter {
            function,
            reason: "NaN argument".into(),
        });
    }
    Ok(())
}

/// Airy function Ai(x).
pub fn airy_ai(x: f64) -> Result<EvalResult> {
    check_nan(x, "airy_ai")?;
    let eps = f64::EPSILON;
    if x < OSCILLATORY_ASYMPTOTIC {
        let (ai, _) = airy_asymptotic_left(x);
        return Ok(EvalResult::converged(ai, 1e-13 * (-x).powf(-0.25)));
    }
    if x < MACLAURIN_LEFT {
        let (y0, dy0, peak0) = ai_maclaurin(MACLAURIN_LEFT);
        let m = LinearOde2::airy().march(MACLAURIN_LEFT, y0, dy0, x);
        let err = (peak0 + m.peak) * 8.0 * eps * (m.steps as f64 + 1.0);
        return Ok(EvalResult::converged(m.y, err));
    }
    if x <= AI_MACLAURIN_RIGHT {
        let (v, _, peak) = ai_maclaurin(x);
        return Ok(
            EvalResult::converged(v, 8.0 * eps * peak.max(v.abs())).with_cancellation_check(peak)
        );
    }
    let x_asym = (1.5 * ZETA_ASYMPTOTIC).powf(2.0 / 3.0);
    if x >= x_asym {
        let (v, _) = ai_asymptotic_right(x);
        return Ok(EvalResult::converged(v, 1e-15 * v.abs()));
    }
    // march the recessive solution back from the asymptotic region
    let (y0, dy0) = ai_asymptotic_right(x_asym);
    let m = LinearOde2::airy().march(x_asym, y0, dy0, x);
    Ok(EvalResult::converged(
        m.y,
        m.y.abs() * (1e-15 + 8.0 * eps * m.steps as f64),
    ))
}

/// Airy function Bi(x).
pub fn airy_bi(x: f64) -> Result<EvalResult> {
    check_nan(x, "airy_bi")?;
    let eps = f64::EPSILON;
    if x > BI_OVERFLOW {
        return Err(Error::Overflow {
            function: "airy_bi",
            at: x,
        });
    }
    if x < OSCILLATORY_ASYMPTOTIC {
        let (_, bi) = airy_asymptotic_left(x);
        return Ok(EvalResult::converged(bi, 1e-13 * (-x).powf(-0.25)));
    }
    if x < MACLAURIN_LEFT {
        let (y0, dy0, peak0) = bi_maclaurin(MACLAURIN_LEFT);
        let m = LinearOde2::airy().march(MACLAURIN_LEFT, y0, dy0, x);
        let err = (peak0 + m.peak) * 8.0 * eps * (m.steps as f64 + 1.0);
        return Ok(EvalResult::converged(m.y, err));
    }
    let (v, _, peak) = bi_maclaurin(x);
    if !v.is_finite() {
        return Err(Error::Overflow {
            function: "airy_bi",
            at: x,
        });
    }
    let mut r =
        EvalResult::converged(v, 8.0 * eps * peak.max(v.abs())).with_cancellation_check(peak);
    if x > 0.0 {
        r.flags.overflow_guarded = true;
    }
    Ok(r)
}

#[cfg(test)]
fn ai_zero_from_gamma() -> Result<f64> {
    Ok(3f64.powf(-2.0 / 3.0) / super::gamma::gamma(2.0 / 3.0)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn origin_values() {
        assert!((airy_ai(0.0).unwrap().value - 0.355_028_053_9).abs() < 1e-10);
        assert!((airy_bi(0.0).unwrap().value - 0.614_926_627_4).abs() < 1e-10);
        assert!((ai_zero_from_gamma().unwrap() - AI0).abs() < 1e-15);
    }

    #[test]
    fn reference_values() {
        // reference values to 16 digits
        let cases = [
            (1.0, 0.135_292_416_312_881_4, 1.207_423_594_952_871_3),
            (-2.0, 0.227_407_428_201_685_6, -0.412_302_587_956_398_5),
            (-10.0, 0.040_241_238_486_443_19, -0.314_679_829_643_838_6),
        ];
        for &(x, ai, bi) in &cases {
            let a = airy_ai(x).unwrap().value;
            let b = airy_bi(x).unwrap().value;
            assert!((a - ai).abs() < 1e-12, "Ai({x}) = {a}");
            assert!((b - bi).abs() < 1e-12, "Bi({x}) = {b}");
        }
        let a5 = airy_ai(5.0).unwrap().value;
        assert!((a5 - 1.083_444_281_360_744e-4).abs() < 1e-14, "{a5}");
    }

    #[test]
    fn wronskian_on_the_left() {
        // Ai Bi' - Ai' Bi = 1/π, checked through the asymptotic branch
        let (ai, bi) = airy_asymptotic_left(-60.0);
        let h = 1e-5;
        let (ai_p, bi_p) = airy_asymptotic_left(-60.0 + h);
        let (ai_m, bi_m) = airy_asymptotic_left(-60.0 - h);
        let w = ai * (bi_p - bi_m) / (2.0 * h) - bi * (ai_p - ai_m) / (2.0 * h);
        assert!((w - 1.0 / PI).abs() < 1e-6);
    }

    #[test]
    fn bi_overflow_guard() {
        assert!(airy_bi(200.0).is_err());
    }
}

use super::eval::{EvalFlags, EvalResult, CANCELLATION_THRESHOLD};
use super::gamma::{gamma, rgamma};
use super::kummer::{is_nonpositive_integer, kummer_m, SERIES_TOL};
use super::ode::march_kummer;
use crate::error::{Error, Result};
use crate::numeric::CompensatedSum;

/// Loss factor above which the connection formula hands over to marching.
const CONNECTION_LOSS_LIMIT: f64 = 1e3;
const MAX_ASYMPTOTIC_START: f64 = 1e5;

/// Switchover for the large-z expansion: z > 30 + a² with a the larger of the
/// two Pochhammer parameters.
pub(crate) fn asymptotic_threshold(a: f64, b: f64) -> f64 {
    let c = a - b + 1.0;
    30.0 + a.abs().max(c.abs()).powi(2)
}

/// z^{-a} ₂F₀(a, a-b+1; ; -1/z), truncated at the smallest term.
pub(crate) fn u_asymptotic(a: f64, b: f64, z: f64) -> Option<EvalResult> {
    let c = a - b + 1.0;
    let mut acc = CompensatedSum::new();
    let mut term: f64 = 1.0;
    acc.add(term);
    let mut converged = false;
    for n in 0..500 {
        let nf = n as f64;
        let next = -term * (a + nf) * (c + nf) / ((nf + 1.0) * z);
        if next == 0.0 {
            converged = true;
            break;
        }
        if next.abs() > term.abs() && n > 0 {
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
    let pre = z.powf(-a);
    let value = pre * acc.value();
    if !value.is_finite() {
        return None;
    }
    let err = pre.abs() * (term.abs() + acc.compensation() + 2.0 * f64::EPSILON * acc.abs_sum())
        + value.abs() * 4.0 * f64::EPSILON * (1.0 + (a * z.ln()).abs());
    Some(EvalResult::converged(value, err).with_cancellation_check(pre.abs() * acc.max_term()))
}

/// Terminating case a = -m: U is a polynomial of degree m in z.
fn u_polynomial(a: f64, b: f64, z: f64) -> EvalResult {
    let m = (-a) as usize;
    let c = a - b + 1.0;
    // z^m Σ_n (a)_n (c)_n / n! (-1/z)^n = Σ_n (a)_n (c)_n / n! (-1)^n z^{m-n}
    let mut acc = CompensatedSum::new();
    let mut coef = 1.0;
    for n in 0..=m {
        acc.add(coef * z.powi((m - n) as i32));
        let nf = n as f64;
        coef *= -(a + nf) * (c + nf) / (nf + 1.0);
    }
    let value = acc.value();
    let err = acc.compensation() + 2.0 * (m as f64 + 1.0) * f64::EPSILON * acc.abs_sum();
    EvalResult::converged(value, err).with_cancellation_check(acc.max_term())
}

/// U = Γ(1-b)/Γ(a-b+1) M(a,b,z) + Γ(b-1)/Γ(a) z^{1-b} M(a-b+1,2-b,z).
fn u_connection(a: f64, b: f64, z: f64) -> Result<(EvalResult, f64)> {
    let g1 = gamma(1.0 - b)?;
    let g2 = gamma(b - 1.0)?;
    let w1 = g1.value * rgamma(a - b + 1.0);
    let w2 = g2.value * rgamma(a) * z.powf(1.0 - b);
    let m1 = kummer_m(a, b, z)?;
    let m2 = kummer_m(a - b + 1.0, 2.0 - b, z)?;
    let t1 = w1 * m1.value;
    let t2 = w2 * m2.value;
    let value = t1 + t2;
    let spread = t1.abs() + t2.abs();
    let err = w1.abs() * m1.abs_error_estimate
        + w2.abs() * m2.abs_error_estimate
        + spread * 16.0 * f64::EPSILON;
    let mut r = EvalResult {
        value,
        abs_error_estimate: err,
        flags: EvalFlags {
            converged: m1.flags.converged && m2.flags.converged,
            ..EvalFlags::default()
        },
    };
    r.merge_flags(&m1);
    r.merge_flags(&m2);
    let loss = if value == 0.0 {
        f64::INFINITY
    } else {
        spread / value.abs()
    };
    if loss > CANCELLATION_THRESHOLD {
        r.flags.cancellation_warning = true;
    }
    Ok((r, loss))
}

/// Starts at the asymptotic region and marches Kummer's equation back to z.
/// U is the recessive solution as z grows, so the backward direction is stable.
fn u_by_marching(a: f64, b: f64, z: f64) -> Option<EvalResult> {
    let mut x0 = asymptotic_threshold(a, b)
        .max(asymptotic_threshold(a + 1.0, b + 1.0))
        .max(z);
    while x0 <= MAX_ASYMPTOTIC_START {
        if let (Some(u0), Some(u1)) = (u_asymptotic(a, b, x0), u_asymptotic(a + 1.0, b + 1.0, x0)) {
            let du0 = -a * u1.value;
            let m = march_kummer(a, b, x0, u0.value, du0, z);
            if !m.y.is_finite() {
                return None;
            }
            let start_rel = u0.rel_error().max(u1.rel_error());
            let err = m.peak * (8.0 * m.steps as f64 * f64::EPSILON + start_rel);
            return Some(EvalResult::converged(m.y, err).with_cancellation_check(m.peak));
        }
        x0 *= 2.0;
    }
    None
}

/// Tricomi's confluent hypergeometric function U(a; b; z) for z >= 0.
pub fn tricomi_u(a: f64, b: f64, z: f64) -> Result<EvalResult> {
    if a.is_nan() || b.is_nan() || z.is_nan() {
        return Err(Error::Parameter {
            function: "tricomi_u",
            reason: "NaN argument".into(),
        });
    }
    if z < 0.0 {
        return Err(Error::Domain(format!("tricomi_u requires z >= 0, got {z}")));
    }
    if a == 0.0 {
        return Ok(EvalResult::exact(1.0));
    }
    if z == 0.0 {
        // U(a,b,0) = Γ(1-b)/Γ(a-b+1) for b < 1
        if b < 1.0 {
            let g = gamma(1.0 - b)?;
            return Ok(g.scale(rgamma(a - b + 1.0)));
        }
        return Err(Error::Pole {
            function: "tricomi_u",
            at: z,
        });
    }
    if is_nonpositive_integer(a) {
        return Ok(u_polynomial(a, b, z));
    }
    let c = a - b + 1.0;
    if is_nonpositive_integer(c) {
        let p = u_polynomial(c, 2.0 - b, z);
        return Ok(p.scale(z.powf(1.0 - b)));
    }
    if z >= asymptotic_threshold(a, b) {
        if let Some(r) = u_asymptotic(a, b, z) {
            return Ok(r);
        }
    }
    let connection = if b.fract() != 0.0 {
        let (r, loss) = u_connection(a, b, z)?;
        if loss <= CONNECTION_LOSS_LIMIT && r.value.is_finite() {
            return Ok(r);
        }
        Some(r)
    } else {
        None
    };
    match (u_by_marching(a, b, z), connection) {
        (Some(r), _) => Ok(r),
        (None, Some(r)) if r.value.is_finite() => Ok(r),
        _ => Err(Error::NoConvergence {
            function: "tricomi_u",
            reason: format!("no stable evaluation route at a = {a}, b = {b}, z = {z}"),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_a_is_one() {
        assert_eq!(tricomi_u(0.0, 0.5, 3.7).unwrap().value, 1.0);
    }

    #[test]
    fn leading_asymptotic_term() {
        let z = 1e4;
        let r = tricomi_u(0.7, 1.3, z).unwrap();
        assert!((r.value * z.powf(0.7) - 1.0).abs() < 0.01);
    }

    #[test]
    fn polynomial_cases() {
        // U(-2, b, z) = z^2 - 2(b+1) z + b(b+1)
        let (b, z) = (0.5, 2.0);
        let r = tricomi_u(-2.0, b, z).unwrap();
        let exact = z * z - 2.0 * (b + 1.0) * z + b * (b + 1.0);
        assert!((r.value - exact).abs() < 1e-14);
    }

    #[test]
    fn erfc_identity() {
        // U(1/2, 1/2, z²) = √π e^{z²} erfc(z), here at z = 1
        let v = tricomi_u(0.5, 0.5, 1.0).unwrap().value;
        let exact = 0.757_872_156_141_312_1;
        assert!((v - exact).abs() < 1e-14 * exact, "{v} vs {exact}");
    }

    #[test]
    fn marching_agrees_with_connection_where_both_work() {
        let (a, b, z) = (0.35, 0.5, 2.0);
        let (conn, _) = u_connection(a, b, z).unwrap();
        let marched = u_by_marching(a, b, z).unwrap();
        assert!((conn.value - marched.value).abs() < 1e-12 * conn.value.abs());
    }

    #[test]
    fn integer_b_uses_marching() {
        // U(1, 1, z) = e^z E1(z), here at z = 1
        let v = tricomi_u(1.0, 1.0, 1.0).unwrap().value;
        let exact = 0.596_347_362_323_194_1;
        assert!((v - exact).abs() < 1e-13 * exact, "{v}");
    }
}

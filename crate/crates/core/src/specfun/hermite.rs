use std::f64::consts::PI;

use super::eval::{EvalResult, CANCELLATION_THRESHOLD};
use super::gamma::rgamma;
use super::kummer::kummer_m;
use super::ode::LinearOde2;
use super::tricomi::tricomi_u;
use crate::error::{Error, Result};

/// Above this loss between the two parts of the representation at z < 0 the
/// value is recomputed by marching the Hermite equation out from the origin.
const SPLIT_LOSS_LIMIT: f64 = 1e4;
const MAX_POLY_DEGREE: f64 = 2000.0;

/// Physicists' Hermite polynomial by the three-term recurrence.
fn hermite_poly(n: usize, z: f64) -> EvalResult {
    let (mut h0, mut h1) = (1.0, 2.0 * z);
    let (mut a0, mut a1) = (1.0, 2.0 * z.abs());
    if n == 0 {
        return EvalResult::exact(1.0);
    }
    for k in 1..n {
        let kf = k as f64;
        let h2 = 2.0 * z * h1 - 2.0 * kf * h0;
        let a2 = 2.0 * z.abs() * a1 + 2.0 * kf * a0;
        h0 = h1;
        h1 = h2;
        a0 = a1;
        a1 = a2;
    }
    EvalResult::converged(h1, 2.0 * n as f64 * f64::EPSILON * a1)
}

/// H_ν(0) and H_ν'(0).
fn hermite_at_origin(nu: f64) -> (f64, f64) {
    let p = 2f64.powf(nu) * PI.sqrt();
    (p * rgamma(0.5 * (1.0 - nu)), -2.0 * p * rgamma(-0.5 * nu))
}

fn hermite_by_marching(nu: f64, z: f64) -> EvalResult {
    let (y0, dy0) = hermite_at_origin(nu);
    let m = LinearOde2::hermite(nu).march(0.0, y0, dy0, z);
    EvalResult::converged(m.y, m.peak * (8.0 * (m.steps as f64 + 1.0) * f64::EPSILON))
        .with_cancellation_check(m.peak)
}

/// Hermite function of real order:
/// H_ν(z) = 2^ν U(-ν/2, 1/2, z²) + [z < 0] 2^{ν+1} √π (|z| - z) M((1-ν)/2, 3/2, z²) / Γ(-ν/2).
/// Non-negative integer orders use the polynomial recurrence.
pub fn hermite_h(nu: f64, z: f64) -> Result<EvalResult> {
    if nu.is_nan() || z.is_nan() {
        return Err(Error::Parameter {
            function: "hermite_h",
            reason: "NaN argument".into(),
        });
    }
    if nu >= 0.0 && nu.fract() == 0.0 && nu <= MAX_POLY_DEGREE {
        let r = hermite_poly(nu as usize, z);
        if !r.value.is_finite() {
            return Err(Error::Overflow {
                function: "hermite_h",
                at: z,
            });
        }
        return Ok(r);
    }
    let x = z * z;
    let scale = 2f64.powf(nu);
    let u = tricomi_u(-0.5 * nu, 0.5, x)?;
    let t1 = u.scale(scale);
    let result = if z < 0.0 {
        let m = kummer_m(0.5 * (1.0 - nu), 1.5, x)?;
        let w = 2.0 * scale * PI.sqrt() * rgamma(-0.5 * nu) * 2.0 * z.abs();
        let t2 = m.scale(w);
        let value = t1.value + t2.value;
        let spread = t1.value.abs() + t2.value.abs();
        let loss = if value == 0.0 {
            f64::INFINITY
        } else {
            spread / value.abs()
        };
        if loss > SPLIT_LOSS_LIMIT || t1.flags.cancellation_warning || t2.flags.cancellation_warning
        {
            let marched = hermite_by_marching(nu, z);
            let direct_err =
                t1.abs_error_estimate + t2.abs_error_estimate + spread * 4.0 * f64::EPSILON;
            if marched.abs_error_estimate < direct_err {
                marched
            } else {
                let mut r = EvalResult::converged(value, direct_err);
                r.merge_flags(&t1);
                r.merge_flags(&t2);
                r
            }
        } else {
            let mut r = EvalResult::converged(
                value,
                t1.abs_error_estimate + t2.abs_error_estimate + spread * 4.0 * f64::EPSILON,
            );
            r.merge_flags(&t1);
            r.merge_flags(&t2);
            if loss > CANCELLATION_THRESHOLD {
                r.flags.cancellation_warning = true;
            }
            r
        }
    } else {
        t1
    };
    if !result.value.is_finite() {
        return Err(Error::Overflow {
            function: "hermite_h",
            at: z,
        });
    }
    Ok(result)
}

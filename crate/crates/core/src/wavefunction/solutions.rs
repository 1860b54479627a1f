use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::oracle::hermite_with_fallback;
use crate::specfun::{kummer_m, rgamma};
use crate::spectrum::{a_of_energy, eps_of_energy, PhysicalSystem};

// All solutions share the form x^{-3/4} e^{-ζ²/2} u with w = √(εx), s = √(2a),
// and ζ = s − w (or w − s for the decaying one). The u-parts depend on (a, w) only.

fn h(nu: f64, z: f64) -> Result<f64> {
    Ok(hermite_with_fallback(nu, z)?.value)
}

/// (u, scale) for ψ_F: u = (s+w) H_{a+1/2}(s−w) − (1+2a)(1−w²) H_{a−1/2}(s−w).
fn u_fundamental(a: f64, w: f64) -> Result<(f64, f64)> {
    let s = (2.0 * a).sqrt();
    let z = s - w;
    let t1 = (s + w) * h(a + 0.5, z)?;
    let t2 = (1.0 + 2.0 * a) * (1.0 - w * w) * h(a - 0.5, z)?;
    Ok((t1 - t2, t1.abs() + t2.abs()))
}

/// (u, scale) for the solution decaying at infinity:
/// u = (s+w) H_{a+1/2}(w−s) + (1+2a)(1−w²) H_{a−1/2}(w−s).
fn u_decaying(a: f64, w: f64) -> Result<(f64, f64)> {
    let s = (2.0 * a).sqrt();
    let z = w - s;
    let t1 = (s + w) * h(a + 0.5, z)?;
    let t2 = (1.0 + 2.0 * a) * (1.0 - w * w) * h(a - 0.5, z)?;
    Ok((t1 + t2, t1.abs() + t2.abs()))
}

/// Real and imaginary parts of H_μ(iζ) after pulling out e^{-ζ²}:
/// R = 2^μ √π M((1+μ)/2, 1/2, ζ²)/Γ((1−μ)/2),
/// I = −2^μ √π 2ζ M(1+μ/2, 3/2, ζ²)/Γ(−μ/2).
fn hermite_imaginary_parts(mu: f64, zeta: f64) -> Result<(f64, f64)> {
    let p = 2f64.powf(mu) * PI.sqrt();
    let y = zeta * zeta;
    let re = p * kummer_m(0.5 * (1.0 + mu), 0.5, y)?.value * rgamma(0.5 * (1.0 - mu));
    let im = -p * 2.0 * zeta * kummer_m(1.0 + 0.5 * mu, 1.5, y)?.value * rgamma(-0.5 * mu);
    Ok((re, im))
}

/// (u, scale) for the second solution, obtained from ψ_F under ε → −ε, a → −a:
/// u = (s+w) R_{1/2−a}(s−w) − (1−2a)(1+w²) I_{−1/2−a}(s−w).
fn u_second(a: f64, w: f64) -> Result<(f64, f64)> {
    let s = (2.0 * a).sqrt();
    let z = s - w;
    let (r, _) = hermite_imaginary_parts(0.5 - a, z)?;
    let (_, i) = hermite_imaginary_parts(-0.5 - a, z)?;
    let t1 = (s + w) * r;
    let t2 = (1.0 - 2.0 * a) * (1.0 + w * w) * i;
    Ok((t1 - t2, t1.abs() + t2.abs()))
}

struct Point {
    a: f64,
    w: f64,
    pre: f64,
}

fn point(x: f64, sys: &PhysicalSystem, e: f64) -> Result<Point> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("x = {x} must be positive")));
    }
    sys.require_well()?;
    let a = a_of_energy(sys, e)?;
    let eps = eps_of_energy(sys, e)?;
    let w = (eps * x).sqrt();
    Ok(Point {
        a,
        w,
        pre: x.powf(-0.75),
    })
}

fn finish(v: f64, x: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow {
            function: "wavefunction",
            at: x,
        })
    }
}

/// ψ_F = x^{-3/4} e^{-(√(2a) − √(εx))²/2} u(x).
pub fn fundamental_psi(x: f64, sys: &PhysicalSystem, e: f64) -> Result<f64> {
    let p = point(x, sys, e)?;
    let z = (2.0 * p.a).sqrt() - p.w;
    finish(p.pre * (-0.5 * z * z).exp() * u_fundamental(p.a, p.w)?.0, x)
}

/// The second independent solution, real for E < V0.
pub fn second_psi(x: f64, sys: &PhysicalSystem, e: f64) -> Result<f64> {
    let p = point(x, sys, e)?;
    let z = (2.0 * p.a).sqrt() - p.w;
    finish(p.pre * (-0.5 * z * z).exp() * u_second(p.a, p.w)?.0, x)
}

/// The solution recessive at infinity. At a root of the spectrum equation it
/// is the bound state; at a = 1/2 it vanishes identically.
pub fn decaying_psi(x: f64, sys: &PhysicalSystem, e: f64) -> Result<f64> {
    let p = point(x, sys, e)?;
    let z = p.w - (2.0 * p.a).sqrt();
    finish(p.pre * (-0.5 * z * z).exp() * u_decaying(p.a, p.w)?.0, x)
}

/// C1 ψ_F + C2 ψ_2.
pub fn psi(x: f64, sys: &PhysicalSystem, e: f64, c1: f64, c2: f64) -> Result<f64> {
    Ok(c1 * fundamental_psi(x, sys, e)? + c2 * second_psi(x, sys, e)?)
}

/// C2/C1 cancelling the x^{-3/4} branch at the origin.
pub fn boundary_ratio(sys: &PhysicalSystem, e: f64) -> Result<f64> {
    sys.require_well()?;
    let a = a_of_energy(sys, e)?;
    let (lf, _) = u_fundamental(a, 0.0)?;
    let (l2, s2) = u_second(a, 0.0)?;
    if l2.abs() <= 1e-14 * s2 {
        return Err(Error::Division(format!(
            "second solution has no singular branch at a = {a}"
        )));
    }
    Ok(-lf / l2)
}

fn amplitude_ratio(a: f64, u: fn(f64, f64) -> Result<(f64, f64)>) -> Result<f64> {
    let s = (2.0 * a).sqrt();
    let mut worst: f64 = 0.0;
    for i in 1..=24 {
        let w = (s + 6.0) * i as f64 / 24.0;
        let (v, scale) = u(a, w)?;
        if scale > 0.0 {
            worst = worst.max(v.abs() / scale);
        }
    }
    Ok(worst)
}

/// max |u| / scale of the decaying solution over a grid in w; near zero only
/// where that solution vanishes identically.
pub(crate) fn decaying_amplitude_ratio(a: f64) -> Result<f64> {
    amplitude_ratio(a, u_decaying)
}

/// The same measure for ψ_F.
pub fn fundamental_amplitude_ratio(a: f64) -> Result<f64> {
    amplitude_ratio(a, u_fundamental)
}

/// Default `fraction` for `residual_step`: balances seventh-order truncation
/// against evaluation noise amplified by 1/h².
pub const RESIDUAL_STEP_FRACTION: f64 = 0.0125;

/// Step for `schrodinger_residual`: a fixed fraction of the shortest local
/// length among x, |q(x)|^{-1/2} and the asymptotic decay length.
pub fn residual_step(sys: &PhysicalSystem, e: f64, x: f64, fraction: f64) -> f64 {
    let k2 = 2.0 * sys.k();
    let local = (k2 * (sys.potential(x) - e)).abs().sqrt().recip();
    let decay = (k2 * (sys.v0 - e)).abs().sqrt().recip();
    fraction * x.min(local).min(decay)
}

/// ψ'' − q ψ by seven-point stencils at step `h`, with q = (2m/ħ²)(V − E),
/// divided by |ψ''| + |q| A where A = √(ψ² + ψ'²/|q|) is the local amplitude.
/// The amplitude keeps the measure meaningful at zeros of ψ.
pub fn schrodinger_residual<F>(f: F, sys: &PhysicalSystem, e: f64, x: f64, h: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    if !(h > 0.0 && x - 3.0 * h > 0.0) {
        return Err(Error::Domain(format!("step {h} does not fit at x = {x}")));
    }
    let mut v = [0.0; 7];
    for (i, slot) in v.iter_mut().enumerate() {
        *slot = f(x + (i as f64 - 3.0) * h)?;
    }
    let d1 = (-v[0] + 9.0 * v[1] - 45.0 * v[2] + 45.0 * v[4] - 9.0 * v[5] + v[6]) / (60.0 * h);
    let d2 = (2.0 * (v[0] + v[6]) - 27.0 * (v[1] + v[5]) + 270.0 * (v[2] + v[4]) - 490.0 * v[3])
        / (180.0 * h * h);
    let f0 = v[3];
    let q = 2.0 * sys.k() * (sys.potential(x) - e);
    let amp = if q == 0.0 {
        f0.abs()
    } else {
        (f0 * f0 + d1 * d1 / q.abs()).sqrt()
    };
    let scale = d2.abs() + q.abs() * amp;
    Ok(if scale == 0.0 {
        0.0
    } else {
        (d2 - q * f0).abs() / scale
    })
}

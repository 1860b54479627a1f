//! Wronskian of the fundamental pair in double-double with analytic derivatives.
//!
//! Both solutions grow for E < V0, so ψ_F ψ_2' − ψ_F' ψ_2 cancels by many
//! orders of magnitude at large x and cannot be resolved in double precision.

use super::dd::DoubleDouble as DD;
use super::highprec::{hermite_dd, kummer_m_dd, rgamma_dd};
use crate::error::Result;
use crate::spectrum::{a_of_energy, eps_of_energy, PhysicalSystem};

fn h(nu: DD, z: DD) -> Result<DD> {
    Ok(hermite_dd(nu, z)?.value)
}

fn m(a: DD, b: DD, z: DD) -> Result<DD> {
    Ok(kummer_m_dd(a, b, z)?.value)
}

/// (R_μ, dR_μ/dζ) with R_μ = 2^μ √π M((1+μ)/2, 1/2, ζ²)/Γ((1−μ)/2).
fn re_part(mu: DD, zeta: DD) -> Result<(DD, DD)> {
    let half = DD::from_f64(0.5);
    let c = DD::from_f64(2.0).powf(mu) * DD::PI.sqrt() * rgamma_dd((DD::ONE - mu) * 0.5)?.0;
    let y = zeta.sqr();
    let a = (DD::ONE + mu) * 0.5;
    let v = c * m(a, half, y)?;
    let d = c * (DD::ONE + mu) * zeta * 2.0 * m(a + 1.0, DD::from_f64(1.5), y)?;
    Ok((v, d))
}

/// (I_μ, dI_μ/dζ) with I_μ = −2^μ √π 2ζ M(1+μ/2, 3/2, ζ²)/Γ(−μ/2).
fn im_part(mu: DD, zeta: DD) -> Result<(DD, DD)> {
    let c = -(DD::from_f64(2.0).powf(mu) * DD::PI.sqrt() * rgamma_dd(-mu * 0.5)?.0);
    let y = zeta.sqr();
    let a = DD::ONE + mu * 0.5;
    let m0 = m(a, DD::from_f64(1.5), y)?;
    let m1 = m(a + 1.0, DD::from_f64(2.5), y)?;
    let v = c * zeta * 2.0 * m0;
    let d = c * (m0 * 2.0 + y * a * m1 * (DD::from_f64(8.0) / DD::from_f64(3.0)));
    Ok((v, d))
}

/// ψ_F ψ_2' − ψ_F' ψ_2 at `x`, rounded to double.
pub fn highprec_wronskian(sys: &PhysicalSystem, e: f64, x: f64) -> Result<f64> {
    let a = DD::from_f64(a_of_energy(sys, e)?);
    let eps = DD::from_f64(eps_of_energy(sys, e)?);
    let xd = DD::from_f64(x);
    let s = (a * 2.0).sqrt();
    let w = (eps * xd).sqrt();
    let zeta = s - w;
    let c = DD::ONE + a * 2.0;
    let d = DD::ONE - a * 2.0;
    let half = DD::from_f64(0.5);

    let (hp, hm, hmm) = (h(a + half, zeta)?, h(a - half, zeta)?, h(a - 1.5, zeta)?);
    let one_m_w2 = DD::ONE - w.sqr();
    let uf = (s + w) * hp - c * one_m_w2 * hm;
    let uf_w = hp - c * (s + w) * hm + c * w * hm * 2.0 + c * one_m_w2 * (a * 2.0 - 1.0) * hmm;

    let (r, r_z) = re_part(half - a, zeta)?;
    let (i, i_z) = im_part(-half - a, zeta)?;
    let one_p_w2 = DD::ONE + w.sqr();
    let u2 = (s + w) * r - d * one_p_w2 * i;
    let u2_w = r - (s + w) * r_z - d * w * i * 2.0 + d * one_p_w2 * i_z;

    // both solutions share x^{-3/4} e^{-ζ²/2}; dw/dx = w/(2x)
    let pre_sq = xd.powf(DD::from_f64(-1.5)) * (-zeta.sqr()).exp();
    let wr = pre_sq * w / (xd * 2.0) * (uf * u2_w - uf_w * u2);
    Ok(wr.to_f64())
}

use serde::Serialize;

use super::termination::paper_potential;
use super::{reduce_to_heun, series_coeffs, AnsatzParams, Branch, HermiteSeries, HeunParams};
use crate::error::{Error, Result};
use crate::numeric::poly_eval;
use crate::oracle::hermite_with_fallback;
use crate::spectrum::PhysicalSystem;

/// Reduction of the paper potential at energy `e` (α0 = −3/2, α2 < 0).
pub fn paper_heun(sys: &PhysicalSystem, e: f64) -> Result<(AnsatzParams, HeunParams)> {
    sys.require_well()?;
    if !(e < sys.v0) {
        return Err(Error::Domain(format!(
            "E = {e} must lie below V0 = {}",
            sys.v0
        )));
    }
    let pot = paper_potential(sys.v0, sys.v1, sys.m, sys.hbar);
    reduce_to_heun(&pot, e, sys.m, sys.hbar, (Branch::Minus, Branch::Minus))
}

fn five_term(x: f64, sys: &PhysicalSystem, e: f64, fundamental: bool) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("x = {x} must be positive")));
    }
    let (ap, hp) = paper_heun(sys, e)?;
    let series = series_coeffs(&hp, 4)?;
    let z = (2.0 * x).sqrt();
    let zeta = series.argument(z);
    let sum = if fundamental {
        series.solution_at(zeta)?
    } else {
        series.alternating_at(zeta)?
    };
    Ok(z.powf(ap.alpha0) * (ap.alpha1 * z + ap.alpha2 * z * z).exp() * sum)
}

/// z^{α0} e^{α1 z + α2 z²} Σ_{n=0}^{4} c_n H_{base+n}(−ζ), z = √(2x), ζ = √(εx) − √(2a):
/// the fundamental solution up to a constant.
pub fn five_term_psi(x: f64, sys: &PhysicalSystem, e: f64) -> Result<f64> {
    five_term(x, sys, e, true)
}

/// The same prefactor with Σ (−1)^n c_n H_{base+n}(ζ): the solution recessive at infinity.
pub fn five_term_psi_direct(x: f64, sys: &PhysicalSystem, e: f64) -> Result<f64> {
    five_term(x, sys, e, false)
}

/// p_plus(ζ) H_{order+1}(ζ) + p_minus(ζ) H_{order}(ζ), polynomials ascending in ζ.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TwoTermForm {
    pub order: f64,
    pub p_plus: Vec<f64>,
    pub p_minus: Vec<f64>,
}

impl TwoTermForm {
    pub fn value(&self, zeta: f64) -> Result<f64> {
        Ok(
            poly_eval(&self.p_plus, zeta) * hermite_with_fallback(self.order + 1.0, zeta)?.value
                + poly_eval(&self.p_minus, zeta) * hermite_with_fallback(self.order, zeta)?.value,
        )
    }
}

fn add_scaled(a: &[f64], b: &[f64], kb: f64) -> Vec<f64> {
    let mut r = vec![0.0; a.len().max(b.len())];
    for (i, v) in a.iter().enumerate() {
        r[i] += v;
    }
    for (i, v) in b.iter().enumerate() {
        r[i] += kb * v;
    }
    r
}

/// 2ζ·p.
fn times_two_zeta(p: &[f64]) -> Vec<f64> {
    let mut r = vec![0.0];
    r.extend(p.iter().map(|c| 2.0 * c));
    r
}

/// Rewrite Σ c_n H_{base+n} on the pair H_{base+pivot}, H_{base+pivot+1}
/// with H_{ν+1} = 2ζH_ν − 2νH_{ν−1}, applied upward above the pair and
/// solved for H_{ν−1} below it.
pub fn reduce_to_two_term(series: &HermiteSeries, pivot: usize) -> Result<TwoTermForm> {
    let len = series.coeffs.len();
    if len < 2 || pivot + 1 >= len {
        return Err(Error::Domain(format!(
            "pivot {pivot} needs at least {} coefficients",
            pivot + 2
        )));
    }
    let nu = |n: usize| series.base_order + n as f64;
    // (A_n, B_n) with H_{base+n} = A_n H_{base+pivot} + B_n H_{base+pivot+1}
    let mut a = vec![Vec::new(); len];
    let mut b = vec![Vec::new(); len];
    a[pivot] = vec![1.0];
    b[pivot] = vec![0.0];
    a[pivot + 1] = vec![0.0];
    b[pivot + 1] = vec![1.0];
    for n in pivot + 2..len {
        let k = -2.0 * nu(n - 1);
        a[n] = add_scaled(&times_two_zeta(&a[n - 1]), &a[n - 2], k);
        b[n] = add_scaled(&times_two_zeta(&b[n - 1]), &b[n - 2], k);
    }
    for n in (0..pivot).rev() {
        let d = 2.0 * nu(n + 1);
        if d == 0.0 {
            return Err(Error::DegenerateIndex { index: n + 1 });
        }
        a[n] = add_scaled(&times_two_zeta(&a[n + 1]), &a[n + 2], -1.0)
            .iter()
            .map(|c| c / d)
            .collect();
        b[n] = add_scaled(&times_two_zeta(&b[n + 1]), &b[n + 2], -1.0)
            .iter()
            .map(|c| c / d)
            .collect();
    }
    let (mut p_minus, mut p_plus) = (vec![0.0], vec![0.0]);
    for (n, c) in series.coeffs.iter().enumerate() {
        p_minus = add_scaled(&p_minus, &a[n], *c);
        p_plus = add_scaled(&p_plus, &b[n], *c);
    }
    Ok(TwoTermForm {
        order: nu(pivot),
        p_plus,
        p_minus,
    })
}

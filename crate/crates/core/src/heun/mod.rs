//! Reduction of the five-term inverse-power family to the bi-confluent Heun
//! equation, its Hermite-function series, termination conditions and the
//! five-term solution of the N = 4 member.

mod five_term;
mod termination;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::hermite_with_fallback;

pub use five_term::{
    five_term_psi, five_term_psi_direct, paper_heun, reduce_to_two_term, TwoTermForm,
};
pub use termination::{
    check_termination, exton, paper_potential, stillinger, termination_qpoly, transformed_exton,
    v4_for_termination, TerminationReport,
};

/// V0 + V1/√x + V2/x + V3/x^{3/2} + V4/x².
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LemieuxBosePotential {
    pub v0: f64,
    pub v1: f64,
    pub v2: f64,
    pub v3: f64,
    pub v4: f64,
}

impl LemieuxBosePotential {
    pub fn value(&self, x: f64) -> f64 {
        let r = x.sqrt();
        self.v0 + self.v1 / r + self.v2 / x + self.v3 / (x * r) + self.v4 / (x * x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

/// Exponents of ψ = z^{α0} e^{α1 z + α2 z²} u(z), z = √(2x).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnsatzParams {
    pub alpha0: f64,
    pub alpha1: f64,
    pub alpha2: f64,
    pub branch_alpha0: Branch,
    pub branch_alpha2: Branch,
}

/// u'' + (γ/z + δ + εz) u' + (αz − q)/z u = 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HeunParams {
    pub gamma_h: f64,
    pub delta_h: f64,
    pub eps_h: f64,
    pub alpha_h: f64,
    pub q_h: f64,
}

/// Ansatz exponents and Heun parameters for energy `e`.
pub fn reduce_to_heun(
    pot: &LemieuxBosePotential,
    e: f64,
    m: f64,
    hbar: f64,
    branches: (Branch, Branch),
) -> Result<(AnsatzParams, HeunParams)> {
    let k = m / (hbar * hbar);
    let disc = 1.0 + 8.0 * k * pot.v4;
    if disc < 0.0 {
        return Err(Error::Branch(format!(
            "α0 is complex: 1 + 8mV4/ħ² = {disc}"
        )));
    }
    let alpha0 = 1.0 + branches.0.sign() * disc.sqrt();
    let a2sq = 0.5 * k * (pot.v0 - e);
    if a2sq < 0.0 {
        return Err(Error::Branch(format!(
            "α2 is complex for E = {e} above V0 = {}",
            pot.v0
        )));
    }
    let alpha2 = branches.1.sign() * a2sq.sqrt();
    if alpha2 == 0.0 {
        return Err(Error::Division("α2 = 0 at E = V0".into()));
    }
    let alpha1 = k * pot.v1 / (std::f64::consts::SQRT_2 * alpha2);
    let gamma_h = 2.0 * alpha0 - 1.0;
    let hp = HeunParams {
        gamma_h,
        delta_h: 2.0 * alpha1,
        eps_h: 4.0 * alpha2,
        alpha_h: alpha1 * alpha1 + 2.0 * (gamma_h + 1.0) * alpha2 - 4.0 * k * pot.v2,
        q_h: -gamma_h * alpha1 + 4.0 * std::f64::consts::SQRT_2 * k * pot.v3,
    };
    let ap = AnsatzParams {
        alpha0,
        alpha1,
        alpha2,
        branch_alpha0: branches.0,
        branch_alpha2: branches.1,
    };
    Ok((ap, hp))
}

/// Inverse of `reduce_to_heun` at known energy.
pub fn reconstruct(
    ap: &AnsatzParams,
    hp: &HeunParams,
    e: f64,
    m: f64,
    hbar: f64,
) -> LemieuxBosePotential {
    let k = m / (hbar * hbar);
    let sqrt2 = std::f64::consts::SQRT_2;
    LemieuxBosePotential {
        v0: e + 2.0 * ap.alpha2 * ap.alpha2 / k,
        v1: sqrt2 * ap.alpha2 * ap.alpha1 / k,
        v2: (ap.alpha1 * ap.alpha1 + 2.0 * (hp.gamma_h + 1.0) * ap.alpha2 - hp.alpha_h) / (4.0 * k),
        v3: (hp.q_h + hp.gamma_h * ap.alpha1) / (4.0 * sqrt2 * k),
        v4: (ap.alpha0 * ap.alpha0 - 2.0 * ap.alpha0) / (8.0 * k),
    }
}

fn require_real(hp: &HeunParams) -> Result<()> {
    if !(hp.eps_h < 0.0) {
        return Err(Error::Regime(format!(
            "ε_h = {} must be negative",
            hp.eps_h
        )));
    }
    Ok(())
}

/// (R_n, Q_n, P_n) with R_n = n(γ+n−α/ε)√(−2ε), Q_n = −q − (γ+n)δ, P_n = (γ+n)√(−ε/2).
pub fn recurrence_coeffs(hp: &HeunParams, n: usize) -> Result<(f64, f64, f64)> {
    require_real(hp)?;
    let nf = n as f64;
    let g = hp.gamma_h + nf;
    Ok((
        nf * (g - hp.alpha_h / hp.eps_h) * (-2.0 * hp.eps_h).sqrt(),
        -hp.q_h - g * hp.delta_h,
        g * (-0.5 * hp.eps_h).sqrt(),
    ))
}

/// Σ c_n H_{base+n}(scale·(z + shift)).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HermiteSeries {
    pub coeffs: Vec<f64>,
    pub base_order: f64,
    pub arg_scale: f64,
    pub arg_shift: f64,
}

impl HermiteSeries {
    pub fn argument(&self, z: f64) -> f64 {
        self.arg_scale * (z + self.arg_shift)
    }

    /// Σ c_n H_{base+n}(ζ), the plain sum.
    pub fn sum_at(&self, zeta: f64) -> Result<f64> {
        let mut s = 0.0;
        for (n, c) in self.coeffs.iter().enumerate() {
            s += c * hermite_with_fallback(self.base_order + n as f64, zeta)?.value;
        }
        Ok(s)
    }

    /// Σ c_n H_{base+n}(−ζ). With coefficients from the recurrence as stated,
    /// this (not the plain sum) solves the Heun equation.
    pub fn solution_at(&self, zeta: f64) -> Result<f64> {
        self.sum_at(-zeta)
    }

    /// Σ (−1)^n c_n H_{base+n}(ζ), the second Heun solution from the same coefficients.
    pub fn alternating_at(&self, zeta: f64) -> Result<f64> {
        let mut s = 0.0;
        for (n, c) in self.coeffs.iter().enumerate() {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            s += sign * c * hermite_with_fallback(self.base_order + n as f64, zeta)?.value;
        }
        Ok(s)
    }

    /// u(z) = Σ c_n H_{base+n}(−scale·(z + shift)).
    pub fn value(&self, z: f64) -> Result<f64> {
        self.solution_at(self.argument(z))
    }
}

/// c_0 = 1 and c_1..c_N by forward recursion R_n c_n = −Q_{n−1} c_{n−1} − P_{n−2} c_{n−2}.
pub fn series_coeffs(hp: &HeunParams, n_terms: usize) -> Result<HermiteSeries> {
    require_real(hp)?;
    let mut c = vec![1.0];
    for n in 1..=n_terms {
        let (r, _, _) = recurrence_coeffs(hp, n)?;
        let (_, q1, _) = recurrence_coeffs(hp, n - 1)?;
        let p2 = if n >= 2 {
            recurrence_coeffs(hp, n - 2)?.2
        } else {
            0.0
        };
        let rhs = -q1 * c[n - 1] - if n >= 2 { p2 * c[n - 2] } else { 0.0 };
        if r == 0.0 || r.abs() < 1e-14 * n as f64 * (-2.0 * hp.eps_h).sqrt() {
            return Err(Error::DegenerateIndex { index: n });
        }
        c.push(rhs / r);
    }
    Ok(HermiteSeries {
        coeffs: c,
        base_order: hp.gamma_h - hp.alpha_h / hp.eps_h,
        arg_scale: (-0.5 * hp.eps_h).sqrt(),
        arg_shift: hp.delta_h / hp.eps_h,
    })
}

/// max over interior n of |R_n c_n + Q_{n−1} c_{n−1} + P_{n−2} c_{n−2}| / Σ|terms|.
pub fn recurrence_residual(hp: &HeunParams, series: &HermiteSeries) -> Result<f64> {
    let c = &series.coeffs;
    let mut worst: f64 = 0.0;
    for n in 1..c.len() {
        let (r, _, _) = recurrence_coeffs(hp, n)?;
        let (_, q1, _) = recurrence_coeffs(hp, n - 1)?;
        let p2 = if n >= 2 {
            recurrence_coeffs(hp, n - 2)?.2 * c[n - 2]
        } else {
            0.0
        };
        let terms = [r * c[n], q1 * c[n - 1], p2];
        let scale: f64 = terms.iter().map(|t| t.abs()).sum();
        if scale > 0.0 {
            worst = worst.max(terms.iter().sum::<f64>().abs() / scale);
        }
    }
    Ok(worst)
}

use std::f64::consts::PI;

use serde::Serialize;

use super::exact::find_roots;
use super::system::PhysicalSystem;
use crate::error::{Error, Result};
use crate::rootfind::{refine, Sample};
use crate::specfun::{airy_ai, airy_bi, cos_pi, gamma, sin_pi};

/// The rounded B0 used with the trigonometric spectrum equation.
pub const B0_ROUND: f64 = 0.2;

/// Constants of the approximation ladder.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ApproxConstants {
    pub a0: f64,
    pub b0: f64,
    pub b1: f64,
    pub b2: f64,
    pub d1: f64,
    pub d2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum B2Preset {
    /// 3√3/(100π).
    Analytic,
    /// 1/20.
    OneTwentieth,
    /// Least-squares fit to the exact roots.
    LeastSquares,
}

impl ApproxConstants {
    /// B0 = Γ(1/3)/(6·3^{1/3}·Γ(2/3)).
    pub fn b0_defining() -> f64 {
        let g13 = gamma(1.0 / 3.0).expect("Γ(1/3)").value;
        let g23 = gamma(2.0 / 3.0).expect("Γ(2/3)").value;
        g13 / (6.0 * 3f64.cbrt() * g23)
    }

    /// All constants from their defining expressions, b2 = 3√3/(100π).
    pub fn analytic() -> Self {
        let r3 = 3f64.sqrt();
        Self {
            a0: B0_ROUND,
            b0: Self::b0_defining(),
            b1: 3.0 * r3 / (10.0 * PI),
            b2: 3.0 * r3 / (100.0 * PI),
            d1: -1.0 / (5.0 * r3),
            d2: 1.0 / (13.0 * r3),
        }
    }

    pub fn with_b2(self, b2: f64) -> Self {
        Self { b2, ..self }
    }

    pub fn preset(preset: B2Preset, exact_roots: &[f64]) -> Self {
        let base = Self::analytic();
        match preset {
            B2Preset::Analytic => base,
            B2Preset::OneTwentieth => base.with_b2(0.05),
            B2Preset::LeastSquares => base.with_b2(least_squares_b2(exact_roots, base.b1)),
        }
    }
}

impl Default for ApproxConstants {
    fn default() -> Self {
        Self::analytic()
    }
}

/// The bracketed Airy combination cos(πν) Ai(t − B0/ν) − sin(πν) Bi(t + B0/ν),
/// t = −√2 ν^{1/6} (z + √(2ν+1)). The scalar prefactor (where A0 enters) is
/// left out, so only ratios and zero locations are meaningful.
pub fn airy_hermite(nu: f64, z: f64, _a0: f64, b0: f64) -> Result<f64> {
    if !(nu > 0.0) {
        return Err(Error::Domain(format!("airy_hermite needs ν > 0, got {nu}")));
    }
    let t = -std::f64::consts::SQRT_2 * nu.powf(1.0 / 6.0) * (z + (2.0 * nu + 1.0).sqrt());
    let ai = airy_ai(t - b0 / nu)?.value;
    let bi = airy_bi(t + b0 / nu)?.value;
    Ok(cos_pi(nu) * ai - sin_pi(nu) * bi)
}

/// f(a) ≈ a^{-4/3}(2a − 1)/(12 B0), the non-vanishing prefactor of the
/// trigonometric approximation to F.
pub fn prefactor_f(a: f64, b0: f64) -> f64 {
    a.powf(-4.0 / 3.0) * (2.0 * a - 1.0) / (12.0 * b0)
}

/// 3B0/a^{2/3} − sin(πa − π/3)/sin(πa + π/3).
pub fn transcendental_fn(a: f64, b0: f64) -> Result<f64> {
    let den = sin_pi(a + 1.0 / 3.0);
    if den.abs() < 1e-14 {
        return Err(Error::Pole {
            function: "transcendental_fn",
            at: a,
        });
    }
    Ok(3.0 * b0 / a.powf(2.0 / 3.0) - sin_pi(a - 1.0 / 3.0) / den)
}

/// The n-th root of the trigonometric equation, which lies in (n + 1/3, n + 2/3).
pub fn transcendental_root(n: usize, b0: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("levels are numbered from 1".into()));
    }
    let lo = n as f64 + 1.0 / 3.0;
    let hi = n as f64 + 2.0 / 3.0 - 1e-9;
    if b0 == 0.0 {
        return Ok(lo);
    }
    refine(
        |a| Ok(Sample::exact(transcendental_fn(a, b0)?)),
        lo,
        hi,
        1e-14,
    )
}

/// a_n ≈ p + b1 p^{-2/3} − b2 p^{-4/3}, p = n + 1/3.
pub fn closed_form_a(n: usize, consts: &ApproxConstants) -> f64 {
    let p = n as f64 + 1.0 / 3.0;
    p + consts.b1 * p.powf(-2.0 / 3.0) - consts.b2 * p.powf(-4.0 / 3.0)
}

/// a_n ≈ n + (1/π) arg(1 − ν + i√3(1 + ν)), ν = 3B0/(n + 1/3)^{2/3}.
pub fn closed_form_a_arctan(n: usize, b0: f64) -> f64 {
    let p = n as f64 + 1.0 / 3.0;
    let nu = 3.0 * b0 / p.powf(2.0 / 3.0);
    n as f64 + (3f64.sqrt() * (1.0 + nu)).atan2(1.0 - nu) / PI
}

/// E_n ≈ V0 − K [p^{-2/3} + d1 p^{-7/3} + d2 p^{-3}], K = (mV1⁴/8ħ²)^{1/3}.
pub fn energy_series(n: usize, sys: &PhysicalSystem, consts: &ApproxConstants) -> f64 {
    let p = n as f64 + 1.0 / 3.0;
    sys.v0
        - sys.energy_scale()
            * (p.powf(-2.0 / 3.0) + consts.d1 * p.powf(-7.0 / 3.0) + consts.d2 * p.powi(-3))
}

/// Leading semiclassical term V0 − K (n + 1/3)^{-2/3}.
pub fn energy_series_leading(n: usize, sys: &PhysicalSystem) -> f64 {
    sys.v0 - sys.energy_scale() * (n as f64 + 1.0 / 3.0).powf(-2.0 / 3.0)
}

/// Relative-weighted least squares for b2 with b1 held fixed.
fn least_squares_b2(exact_roots: &[f64], b1: f64) -> f64 {
    let (mut num, mut den) = (0.0, 0.0);
    for (i, &a) in exact_roots.iter().enumerate() {
        let p = i as f64 + 1.0 + 1.0 / 3.0;
        let q = p.powf(-4.0 / 3.0);
        let t = p + b1 * p.powf(-2.0 / 3.0) - a;
        let w = 1.0 / (a * a);
        num += w * q * t;
        den += w * q * q;
    }
    num / den
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct B2Report {
    pub preset: B2Preset,
    pub b2: f64,
    pub max_rel_err: f64,
    pub worst_n: usize,
    pub abs_err_n2: f64,
    /// Relative error below 1e-4 everywhere and absolute error at n = 2 at most 2.5e-4.
    pub meets_claim: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct B2Calibration {
    pub reports: Vec<B2Report>,
    /// The first preset meeting the claim, if any.
    pub satisfying: Option<B2Preset>,
    /// The preset with the smallest maximum relative error.
    pub best: B2Preset,
}

/// Compare the b2 presets against exact roots a_1, a_2, ...
pub fn calibrate_b2(exact_roots: &[f64]) -> Result<B2Calibration> {
    if exact_roots.is_empty() {
        return Err(Error::Domain(
            "calibration needs at least one exact root".into(),
        ));
    }
    let reports: Vec<B2Report> = [
        B2Preset::Analytic,
        B2Preset::OneTwentieth,
        B2Preset::LeastSquares,
    ]
    .into_iter()
    .map(|preset| {
        let c = ApproxConstants::preset(preset, exact_roots);
        let mut max_rel_err = 0.0;
        let mut worst_n = 1;
        let mut abs_err_n2 = f64::NAN;
        for (i, &a) in exact_roots.iter().enumerate() {
            let n = i + 1;
            let err = (closed_form_a(n, &c) - a).abs();
            if err / a > max_rel_err {
                max_rel_err = err / a;
                worst_n = n;
            }
            if n == 2 {
                abs_err_n2 = err;
            }
        }
        let meets_claim = max_rel_err < 1e-4 && !(abs_err_n2 > 2.5e-4);
        B2Report {
            preset,
            b2: c.b2,
            max_rel_err,
            worst_n,
            abs_err_n2,
            meets_claim,
        }
    })
    .collect();
    let satisfying = reports.iter().find(|r| r.meets_claim).map(|r| r.preset);
    let best = reports
        .iter()
        .min_by(|x, y| x.max_rel_err.total_cmp(&y.max_rel_err))
        .map(|r| r.preset)
        .unwrap_or(B2Preset::LeastSquares);
    Ok(B2Calibration {
        reports,
        satisfying,
        best,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorRow {
    pub n: usize,
    pub a_exact: f64,
    pub a_eq21: f64,
    pub e_exact: f64,
    pub e_eq24: f64,
    pub rel_err_a: f64,
    pub rel_err_e: f64,
}

/// Exact against closed-form root and three-term energy, one row per level.
pub fn error_table(
    sys: &PhysicalSystem,
    n_max: usize,
    consts: &ApproxConstants,
) -> Result<Vec<ErrorRow>> {
    let levels = find_roots(sys, n_max)?;
    levels
        .iter()
        .map(|l| {
            let a_eq21 = closed_form_a(l.n, consts);
            let e_eq24 = energy_series(l.n, sys, consts);
            Ok(ErrorRow {
                n: l.n,
                a_exact: l.a_n,
                a_eq21,
                e_exact: l.energy,
                e_eq24,
                rel_err_a: (a_eq21 - l.a_n).abs() / l.a_n,
                rel_err_e: ((e_eq24 - l.energy) / (l.energy - sys.v0)).abs(),
            })
        })
        .collect()
}

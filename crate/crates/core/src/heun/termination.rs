use serde::Serialize;

use super::{reduce_to_heun, Branch, HeunParams, LemieuxBosePotential};
use crate::error::Result;
use crate::oracle::qpoly_determinant;

const GAMMA_TOL: f64 = 1e-10;
const RESIDUAL_TOL: f64 = 1e-10;

/// Monic q-polynomial of order N (ascending coefficients) at the δ, ε, α of `hp`.
pub fn termination_qpoly(n: usize, hp: &HeunParams) -> Result<Vec<f64>> {
    let det = qpoly_determinant(n)?;
    let sign = if n.is_multiple_of(2) { -1.0 } else { 1.0 };
    Ok(det
        .univariate_in_q(hp.delta_h, hp.eps_h, hp.alpha_h)
        .into_iter()
        .map(|c| sign * c)
        .collect())
}

/// V4 = (N−1)(N+3)ħ²/(32m).
pub fn v4_for_termination(n: usize, m: f64, hbar: f64) -> f64 {
    let n = n as f64;
    (n - 1.0) * (n + 3.0) * hbar * hbar / (32.0 * m)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TerminationReport {
    pub order: usize,
    pub gamma_h: f64,
    pub gamma_ok: bool,
    pub q_h: f64,
    /// |p(q)| / Σ_k |c_k q^k| for the monic q-polynomial p.
    pub qpoly_residual: f64,
    pub terminates: bool,
}

/// Whether the Hermite series for `pot` at energy `e` truncates after N + 1 terms.
/// Uses the α0 branch below 1 and the negative α2 branch.
pub fn check_termination(
    pot: &LemieuxBosePotential,
    e: f64,
    n: usize,
    m: f64,
    hbar: f64,
) -> Result<TerminationReport> {
    let (_, hp) = reduce_to_heun(pot, e, m, hbar, (Branch::Minus, Branch::Minus))?;
    let gamma_ok = (hp.gamma_h + n as f64).abs() < GAMMA_TOL;
    let coeffs = termination_qpoly(n, &hp)?;
    let (mut value, mut scale) = (0.0, 0.0);
    for (k, c) in coeffs.iter().enumerate() {
        let t = c * hp.q_h.powi(k as i32);
        value += t;
        scale += t.abs();
    }
    let qpoly_residual = if scale == 0.0 {
        0.0
    } else {
        value.abs() / scale
    };
    Ok(TerminationReport {
        order: n,
        gamma_h: hp.gamma_h,
        gamma_ok,
        q_h: hp.q_h,
        qpoly_residual,
        terminates: gamma_ok && qpoly_residual < RESIDUAL_TOL,
    })
}

/// N = 0: V0 + V1/√x + V2/x − 3ħ²/(32m x²).
pub fn stillinger(v0: f64, v1: f64, v2: f64, m: f64, hbar: f64) -> LemieuxBosePotential {
    LemieuxBosePotential {
        v0,
        v1,
        v2,
        v3: 0.0,
        v4: v4_for_termination(0, m, hbar),
    }
}

/// N = 1: V2 = 8mV3²/ħ², V4 = 0.
pub fn exton(v0: f64, v1: f64, v3: f64, m: f64, hbar: f64) -> LemieuxBosePotential {
    let k = m / (hbar * hbar);
    LemieuxBosePotential {
        v0,
        v1,
        v2: 8.0 * k * v3 * v3,
        v3,
        v4: 0.0,
    }
}

/// N = 2: V4 = 5ħ²/(32m), V1 = 8kV2V3 − 16k²V3³ with k = m/ħ².
pub fn transformed_exton(v0: f64, v2: f64, v3: f64, m: f64, hbar: f64) -> LemieuxBosePotential {
    let k = m / (hbar * hbar);
    LemieuxBosePotential {
        v0,
        v1: 8.0 * k * v2 * v3 - 16.0 * k * k * v3.powi(3),
        v2,
        v3,
        v4: v4_for_termination(2, m, hbar),
    }
}

/// N = 4: V2 = V3 = 0, V4 = 21ħ²/(32m).
pub fn paper_potential(v0: f64, v1: f64, m: f64, hbar: f64) -> LemieuxBosePotential {
    LemieuxBosePotential {
        v0,
        v1,
        v2: 0.0,
        v3: 0.0,
        v4: v4_for_termination(4, m, hbar),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn centrifugal_strengths() {
        assert_eq!(v4_for_termination(1, 1.0, 1.0), 0.0);
        assert_eq!(v4_for_termination(0, 2.0, 1.0), -3.0 / 64.0);
        assert_eq!(v4_for_termination(4, 1.0, 2.0), 21.0 * 4.0 / 32.0);
    }

    #[test]
    fn named_potentials_terminate() {
        let cases = [
            (stillinger(0.1, -1.3, 0.4, 1.0, 1.0), 0),
            (exton(0.0, -0.8, 0.35, 1.0, 1.0), 1),
            (transformed_exton(0.2, 0.7, -0.4, 1.0, 1.0), 2),
            (paper_potential(0.0, -1.0, 1.0, 1.0), 4),
        ];
        for (pot, n) in cases {
            for &e in &[-0.9, -0.31, -2.5] {
                let r = check_termination(&pot, e, n, 1.0, 1.0).unwrap();
                assert!(r.terminates, "N = {n}, E = {e}: {r:?}");
            }
        }
    }

    #[test]
    fn order_three_fails() {
        let pot = LemieuxBosePotential {
            v0: 0.0,
            v1: -1.0,
            v2: 0.3,
            v3: 0.2,
            v4: v4_for_termination(3, 1.0, 1.0),
        };
        let r = check_termination(&pot, -0.6, 3, 1.0, 1.0).unwrap();
        assert!(r.gamma_ok);
        assert!(r.qpoly_residual > 1e-3, "{r:?}");
    }
}

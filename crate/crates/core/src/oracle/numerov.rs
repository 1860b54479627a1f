//! Numerov shooting eigensolver, independent of the special-function layer.
//!
//! With s = √x and ψ = √s φ the radial equation becomes
//! φ'' = (6/s² + 8kV1 s + 8k(V0 − E) s²) φ, k = m/ħ², on a grid uniform in s.
//! The outward solution starts on the regular branch φ ~ s³ (ψ ~ x^{7/4}),
//! the inward one from φ = 0 at s_max, and the two are matched by their
//! Wronskian at the outer turning point.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectrum::{energy_of_a, PhysicalSystem};
use crate::wavefunction::{count_nodes, SampleMeta, SampledFunction};

const FROBENIUS_TERMS: usize = 40;
const BISECTION_ITERS: usize = 200;
const RESCALE: f64 = 1e150;
/// Largest relative log-derivative mismatch accepted as an eigenvalue.
const MAX_MISMATCH: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShootingConfig {
    pub x_min: f64,
    pub x_max: f64,
    /// Grid spacing in s = √x on the coarsest of the three Richardson grids.
    pub step: f64,
    pub energy_bracket: (f64, f64),
    pub tol_e: f64,
}

impl ShootingConfig {
    /// Domain and bracket sized for level `n`: the bracket spans a ∈ (n, n + 4/5),
    /// which holds exactly one level, and x_max leaves about forty decay lengths
    /// beyond the turning point of its upper end.
    pub fn for_level(sys: &PhysicalSystem, n: usize) -> Result<Self> {
        sys.require_well()?;
        if n == 0 {
            return Err(Error::Domain("levels are numbered from 1".into()));
        }
        let lo = energy_of_a(sys, n as f64)?;
        let hi = energy_of_a(sys, n as f64 + 0.8)?;
        let tp = sys.outer_turning_point(hi)?;
        let kappa = (2.0 * sys.k() * (sys.v0 - hi)).sqrt();
        let x_max = tp + 40.0 / kappa;
        Ok(Self {
            x_min: 1e-4,
            x_max,
            step: x_max.sqrt() / 4000.0,
            energy_bracket: (lo, hi),
            tol_e: 1e-10 * sys.energy_scale(),
        })
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.x_min > 0.0 && self.x_min < self.x_max) {
            return Err(Error::Domain(format!(
                "need 0 < x_min < x_max, got {} and {}",
                self.x_min, self.x_max
            )));
        }
        if !(self.step > 0.0 && self.step < (self.x_max - self.x_min) / 1e3) {
            return Err(Error::Domain(format!(
                "step {} too coarse for the domain",
                self.step
            )));
        }
        let (lo, hi) = self.energy_bracket;
        if !(lo < hi) || !(self.tol_e > 0.0) {
            return Err(Error::Domain("need bracket lo < hi and tol_e > 0".into()));
        }
        Ok(())
    }
}

/// φ'' = f(s, E) φ on [s_min, s_max], with a prescribed outward start.
trait Problem {
    fn f(&self, s: f64, e: f64) -> f64;
    /// φ at the first two grid points.
    fn start(&self, s0: f64, s1: f64, e: f64) -> (f64, f64);
    fn match_point(&self, e: f64) -> f64;
}

struct Grid {
    s0: f64,
    h: f64,
    n: usize,
}

impl Grid {
    fn new(s_min: f64, s_max: f64, n: usize) -> Self {
        Self {
            s0: s_min,
            h: (s_max - s_min) / n as f64,
            n,
        }
    }
    fn s(&self, i: usize) -> f64 {
        self.s0 + self.h * i as f64
    }
    fn index_of(&self, s: f64) -> usize {
        (((s - self.s0) / self.h).round().max(2.0) as usize).min(self.n - 2)
    }
}

fn numerov_step(h2: f64, f: [f64; 3], y_prev: f64, y: f64) -> f64 {
    (2.0 * (1.0 + 5.0 * h2 * f[1] / 12.0) * y - (1.0 - h2 * f[0] / 12.0) * y_prev)
        / (1.0 - h2 * f[2] / 12.0)
}

struct Shot {
    phi: Vec<f64>,
    m: usize,
    wronskian: f64,
    /// |W| relative to the two log-derivative magnitudes.
    mismatch: f64,
}

fn shoot(p: &dyn Problem, g: &Grid, e: f64) -> Shot {
    let h2 = g.h * g.h;
    let fs: Vec<f64> = (0..=g.n).map(|i| p.f(g.s(i), e)).collect();
    let m = g.index_of(p.match_point(e));
    let mut out = vec![0.0; m + 2];
    (out[0], out[1]) = p.start(g.s(0), g.s(1), e);
    for i in 1..=m {
        out[i + 1] = numerov_step(h2, [fs[i - 1], fs[i], fs[i + 1]], out[i - 1], out[i]);
        if out[i + 1].abs() > RESCALE {
            out.iter_mut().for_each(|v| *v /= RESCALE);
        }
    }
    let mut inw = vec![0.0; g.n + 1];
    inw[g.n - 1] = 1e-30;
    for i in (m..g.n).rev() {
        inw[i - 1] = numerov_step(h2, [fs[i + 1], fs[i], fs[i - 1]], inw[i + 1], inw[i]);
        if inw[i - 1].abs() > RESCALE {
            inw.iter_mut().for_each(|v| *v /= RESCALE);
        }
    }
    let k = out[m] / inw[m];
    let norm = out[m].abs().max(f64::MIN_POSITIVE);
    let wronskian = (out[m] * (inw[m + 1] - inw[m - 1]) / inw[m].abs()
        - inw[m].signum() * (out[m + 1] - out[m - 1]))
        / norm;
    let mismatch = wronskian.abs()
        / ((out[m + 1] - out[m - 1]).abs() / norm + (inw[m + 1] - inw[m - 1]).abs() / inw[m].abs());
    let mut phi = out;
    phi.truncate(m + 1);
    phi.extend(inw[m + 1..].iter().map(|v| v * k));
    Shot {
        phi,
        m,
        wronskian,
        mismatch,
    }
}

/// Bisection on the matching Wronskian within `bracket` on a fixed grid.
fn bisect(p: &dyn Problem, g: &Grid, bracket: (f64, f64)) -> Result<f64> {
    let (mut lo, mut hi) = bracket;
    let mut wlo = shoot(p, g, lo).wronskian;
    let whi = shoot(p, g, hi).wronskian;
    if wlo.signum() == whi.signum() {
        return Err(Error::Bracket(format!(
            "matching defect has one sign on [{lo}, {hi}]"
        )));
    }
    for _ in 0..BISECTION_ITERS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let w = shoot(p, g, mid).wronskian;
        if w.signum() == wlo.signum() {
            lo = mid;
            wlo = w;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Eigenvalues on grids of n, 2n and 4n intervals, combined by two Richardson
/// steps assuming an h⁴ defect. Fails when the two extrapolants disagree by more than `tol`.
fn eigen_extrapolated(
    p: &dyn Problem,
    s_min: f64,
    s_max: f64,
    n: usize,
    bracket: (f64, f64),
    tol: f64,
) -> Result<f64> {
    let e: Vec<f64> = [n, 2 * n, 4 * n]
        .iter()
        .map(|&k| bisect(p, &Grid::new(s_min, s_max, k), bracket))
        .collect::<Result<_>>()?;
    let r1 = e[1] + (e[1] - e[0]) / 15.0;
    let r2 = e[2] + (e[2] - e[1]) / 15.0;
    if (r2 - r1).abs() > tol {
        return Err(Error::Discretization(format!(
            "Richardson extrapolants {r1} and {r2} differ by more than {tol:e}"
        )));
    }
    Ok(r2)
}

struct Well {
    a: f64,
    k8: f64,
    v0: f64,
}

impl Well {
    fn new(sys: &PhysicalSystem) -> Self {
        let k8 = 8.0 * sys.k();
        Self {
            a: k8 * sys.v1,
            k8,
            v0: sys.v0,
        }
    }
}

struct WellProblem<'a> {
    well: Well,
    sys: &'a PhysicalSystem,
}

impl Problem for WellProblem<'_> {
    fn f(&self, s: f64, e: f64) -> f64 {
        6.0 / (s * s) + self.well.a * s + self.well.k8 * (self.well.v0 - e) * s * s
    }

    /// φ = s³ Σ c_j s^j with [(3+j)(2+j) − 6] c_j = A c_{j−3} + B c_{j−4}.
    fn start(&self, s0: f64, s1: f64, e: f64) -> (f64, f64) {
        let b = self.well.k8 * (self.well.v0 - e);
        let mut c = [0.0; FROBENIUS_TERMS];
        c[0] = 1.0;
        for j in 1..FROBENIUS_TERMS {
            let rhs = if j >= 3 { self.well.a * c[j - 3] } else { 0.0 }
                + if j >= 4 { b * c[j - 4] } else { 0.0 };
            c[j] = rhs / (((3 + j) * (2 + j) - 6) as f64);
        }
        let eval = |s: f64| s.powi(3) * c.iter().rev().fold(0.0, |acc, cj| acc * s + cj);
        (eval(s0), eval(s1))
    }

    fn match_point(&self, e: f64) -> f64 {
        self.sys
            .outer_turning_point(e)
            .map(f64::sqrt)
            .unwrap_or(f64::INFINITY)
    }
}

fn well_grid(cfg: &ShootingConfig) -> (f64, f64, usize) {
    let (s_min, s_max) = (cfg.x_min.sqrt(), cfg.x_max.sqrt());
    (s_min, s_max, ((s_max - s_min) / cfg.step).ceil() as usize)
}

/// The n-th eigenvalue, located by bisection on the matching defect inside
/// `cfg.energy_bracket` and Richardson-extrapolated in the step.
pub fn numerov_eigen(sys: &PhysicalSystem, n: usize, cfg: &ShootingConfig) -> Result<f64> {
    sys.require_well()?;
    cfg.validate()?;
    if n == 0 {
        return Err(Error::Domain("levels are numbered from 1".into()));
    }
    let p = WellProblem {
        well: Well::new(sys),
        sys,
    };
    let (s_min, s_max, intervals) = well_grid(cfg);
    let e = eigen_extrapolated(&p, s_min, s_max, intervals, cfg.energy_bracket, cfg.tol_e)?;
    let g = Grid::new(s_min, s_max, 4 * intervals);
    let shot = shoot(&p, &g, e);
    let nodes = count_nodes(&to_sampled(&g, &shot.phi, false)?);
    if nodes != n - 1 {
        return Err(Error::Bracket(format!(
            "eigenvalue {e} in the bracket has {nodes} nodes, level {n} needs {}",
            n - 1
        )));
    }
    Ok(e)
}

fn to_sampled(g: &Grid, phi: &[f64], normalized: bool) -> Result<SampledFunction> {
    let xs: Vec<f64> = (0..phi.len()).map(|i| g.s(i).powi(2)).collect();
    let ys: Vec<f64> = phi
        .iter()
        .enumerate()
        .map(|(i, v)| g.s(i).sqrt() * v)
        .collect();
    SampledFunction::new(
        xs,
        ys,
        SampleMeta {
            x_unit: "length".into(),
            normalized,
        },
    )
}

/// Unit-norm eigenfunction at energy `e` on the finest grid, first lobe positive.
pub fn numerov_wavefunction(
    sys: &PhysicalSystem,
    e: f64,
    cfg: &ShootingConfig,
) -> Result<SampledFunction> {
    sys.require_well()?;
    cfg.validate()?;
    let p = WellProblem {
        well: Well::new(sys),
        sys,
    };
    let (s_min, s_max, intervals) = well_grid(cfg);
    let g = Grid::new(s_min, s_max, 4 * intervals);
    let shot = shoot(&p, &g, e);
    if shot.mismatch > MAX_MISMATCH {
        return Err(Error::Domain(format!(
            "E = {e} is not an eigenvalue: matching defect {:e}",
            shot.mismatch
        )));
    }
    let scale = shot.phi[shot.m].abs();
    // ∫ψ² dx = 2 ∫ s² φ² ds, Simpson in s
    let w: Vec<f64> = shot
        .phi
        .iter()
        .enumerate()
        .map(|(i, v)| 2.0 * (g.s(i) * v).powi(2))
        .collect();
    let mut norm_sq = 0.0;
    let mut i = 0;
    while i + 2 < w.len() {
        norm_sq += g.h / 3.0 * (w[i] + 4.0 * w[i + 1] + w[i + 2]);
        i += 2;
    }
    if i + 1 < w.len() {
        norm_sq += 0.5 * g.h * (w[i] + w[i + 1]);
    }
    let sign = shot
        .phi
        .iter()
        .find(|v| v.abs() > 1e-12 * scale)
        .map_or(1.0, |v| v.signum());
    let f = to_sampled(&g, &shot.phi, true)?;
    Ok(f.scaled(sign / norm_sq.sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wavefunction::count_nodes;

    /// φ'' = (s² − 2E) φ: levels E = j + 1/2.
    struct Oscillator;

    impl Problem for Oscillator {
        fn f(&self, s: f64, e: f64) -> f64 {
            s * s - 2.0 * e
        }
        fn start(&self, _: f64, _: f64, _: f64) -> (f64, f64) {
            (0.0, 1e-30)
        }
        fn match_point(&self, e: f64) -> f64 {
            (2.0 * e).sqrt()
        }
    }

    /// Hydrogen with ℓ = 1: u'' = (2/r² − 2/r − 2E) u, E = −1/(2n²).
    struct Hydrogen;

    impl Problem for Hydrogen {
        fn f(&self, r: f64, e: f64) -> f64 {
            2.0 / (r * r) - 2.0 / r - 2.0 * e
        }
        fn start(&self, r0: f64, r1: f64, _: f64) -> (f64, f64) {
            let u = |r: f64| r * r * (1.0 - r / 2.0);
            (u(r0), u(r1))
        }
        fn match_point(&self, e: f64) -> f64 {
            1.0 / -e
        }
    }

    #[test]
    fn oscillator_levels() {
        for j in 0..4 {
            let want = j as f64 + 0.5;
            let e =
                eigen_extrapolated(&Oscillator, -9.0, 9.0, 1800, (want - 0.4, want + 0.4), 1e-9)
                    .unwrap();
            assert!((e / want - 1.0).abs() < 1e-8, "{j}: {e}");
        }
    }

    #[test]
    fn fourth_order_convergence() {
        let defect =
            |n: usize| bisect(&Oscillator, &Grid::new(-9.0, 9.0, n), (1.1, 1.9)).unwrap() - 1.5;
        let (d1, d2) = (defect(180), defect(360));
        let ratio = d1 / d2;
        assert!((ratio - 16.0).abs() < 1.0, "ratio {ratio}");
    }

    #[test]
    fn hydrogen_p_state() {
        let e = eigen_extrapolated(&Hydrogen, 1e-3, 60.0, 30000, (-0.2, -0.08), 1e-8).unwrap();
        assert!((e + 0.125).abs() < 1e-7, "{e}");
    }

    fn sys() -> PhysicalSystem {
        PhysicalSystem::default()
    }

    #[test]
    fn ground_state_matches_exact_root() {
        let cfg = ShootingConfig::for_level(&sys(), 1).unwrap();
        let e = numerov_eigen(&sys(), 1, &cfg).unwrap();
        let want = energy_of_a(&sys(), 1.437_276_542_458_184_9).unwrap();
        assert!((e / want - 1.0).abs() < 1e-6, "{e} vs {want}");
    }

    #[test]
    fn levels_accumulate_below_v0() {
        let mut prev = f64::NEG_INFINITY;
        for n in 1..=8 {
            let e =
                numerov_eigen(&sys(), n, &ShootingConfig::for_level(&sys(), n).unwrap()).unwrap();
            assert!(e > prev && e < sys().v0);
            prev = e;
        }
    }

    #[test]
    fn scaling_with_v1() {
        let s2 = PhysicalSystem { v1: -2.0, ..sys() };
        let e1 = numerov_eigen(&sys(), 2, &ShootingConfig::for_level(&sys(), 2).unwrap()).unwrap();
        let e2 = numerov_eigen(&s2, 2, &ShootingConfig::for_level(&s2, 2).unwrap()).unwrap();
        assert!((e2 / e1 - 2f64.powf(4.0 / 3.0)).abs() < 1e-7);
    }

    #[test]
    fn eigenfunction_shape() {
        for n in 1..=3 {
            let cfg = ShootingConfig::for_level(&sys(), n).unwrap();
            let e = numerov_eigen(&sys(), n, &cfg).unwrap();
            let f = numerov_wavefunction(&sys(), e, &cfg).unwrap();
            assert_eq!(count_nodes(&f), n - 1);
            assert!((f.norm_sq() - 1.0).abs() < 1e-8, "norm {}", f.norm_sq());
            let at = |x: f64| {
                let i = f.xs.partition_point(|&t| t < x);
                (f.xs[i], f.ys[i])
            };
            let ((x1, y1), (x2, y2)) = (at(1e-3), at(1e-2));
            let slope = (y2 / y1).ln() / (x2 / x1).ln();
            assert!((slope - 1.75).abs() < 0.01, "log-slope {slope}");
        }
    }

    #[test]
    fn rejects_non_eigenvalue() {
        let cfg = ShootingConfig::for_level(&sys(), 1).unwrap();
        let e = numerov_eigen(&sys(), 1, &cfg).unwrap();
        assert!(numerov_wavefunction(&sys(), e * (1.0 - 1e-9), &cfg).is_ok());
        assert!(matches!(
            numerov_wavefunction(&sys(), e * 0.99, &cfg),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn rejects_bad_bracket() {
        let mut cfg = ShootingConfig::for_level(&sys(), 1).unwrap();
        cfg.energy_bracket = (cfg.energy_bracket.0, cfg.energy_bracket.0 + 1e-6);
        assert!(matches!(
            numerov_eigen(&sys(), 1, &cfg),
            Err(Error::Bracket(_))
        ));
    }
}

use serde::Serialize;

use super::sampled::{count_nodes, integrate, SampleMeta, SampledFunction};
use super::solutions::{boundary_ratio, decaying_psi};
use crate::error::{Error, Result};
use crate::spectrum::{energy_of_a, PhysicalSystem, SpectralLevel};

/// |ψ(x_max)| must fall below this fraction of the peak.
pub const TAIL_FLOOR: f64 = 1e-8;
const NORM_INTERVALS: usize = 8192;
const MAX_DOUBLINGS: usize = 12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundState {
    pub level: SpectralLevel,
    pub c2_over_c1: f64,
    /// L² norm of the unnormalized decaying solution on (0, x_max].
    pub norm: f64,
    pub samples: SampledFunction,
}

/// x_i = x_max (i/n)²: uniform in √x, which resolves the
/// x^{7/4} rise at the origin and the √x-periodic oscillations alike.
fn sqrt_grid(x_max: f64, n: usize) -> Vec<f64> {
    (1..=n)
        .map(|i| x_max * (i as f64 / n as f64).powi(2))
        .collect()
}

fn peak_and_tail(sys: &PhysicalSystem, e: f64, x_max: f64) -> Result<(f64, f64)> {
    let xs = sqrt_grid(x_max, 512);
    let mut peak: f64 = 0.0;
    for &x in &xs {
        peak = peak.max(decaying_psi(x, sys, e)?.abs());
    }
    Ok((peak, decaying_psi(x_max, sys, e)?.abs()))
}

/// Sampled, unit-norm bound state for a level from the exact spectrum.
///
/// Without `x_max` the domain starts at four times the outer turning point
/// and doubles until the tail criterion holds. The sign is fixed so the
/// first lobe is positive.
pub fn bound_state(
    sys: &PhysicalSystem,
    level: &SpectralLevel,
    x_max: Option<f64>,
    n_samples: usize,
) -> Result<BoundState> {
    sys.require_well()?;
    if n_samples < 16 {
        return Err(Error::Domain("at least 16 samples are needed".into()));
    }
    let e = energy_of_a(sys, level.a_n)?;
    let x_max = match x_max {
        Some(x) => {
            let (peak, tail) = peak_and_tail(sys, e, x)?;
            if tail > TAIL_FLOOR * peak {
                return Err(Error::InsufficientDomain(format!(
                    "|psi(x_max)| / peak = {:e} at x_max = {x}",
                    tail / peak
                )));
            }
            x
        }
        None => {
            let mut x = 4.0 * sys.outer_turning_point(e)?;
            let mut ok = false;
            for _ in 0..MAX_DOUBLINGS {
                let (peak, tail) = peak_and_tail(sys, e, x)?;
                if tail <= TAIL_FLOOR * peak {
                    ok = true;
                    break;
                }
                x *= 2.0;
            }
            if !ok {
                return Err(Error::InsufficientDomain(format!(
                    "tail still above {TAIL_FLOOR:e} at x = {x}"
                )));
            }
            x
        }
    };

    let fine = sqrt_grid(x_max, NORM_INTERVALS);
    let fine_sq: Vec<f64> = fine
        .iter()
        .map(|&x| decaying_psi(x, sys, e).map(|v| v * v))
        .collect::<Result<_>>()?;
    let norm = integrate(&fine, &fine_sq).sqrt();

    let xs = sqrt_grid(x_max, n_samples);
    let raw: Vec<f64> = xs
        .iter()
        .map(|&x| decaying_psi(x, sys, e))
        .collect::<Result<_>>()?;
    let peak = raw.iter().fold(0.0f64, |m, y| m.max(y.abs()));
    let first = raw
        .iter()
        .find(|y| y.abs() > 1e-6 * peak)
        .copied()
        .unwrap_or(1.0);
    let factor = first.signum() / norm;
    let samples = SampledFunction::new(
        xs,
        raw.iter().map(|y| y * factor).collect(),
        SampleMeta {
            x_unit: "length".into(),
            normalized: true,
        },
    )?;

    let nodes = count_nodes(&samples);
    if nodes + 1 != level.n {
        return Err(Error::Discretization(format!(
            "level {} shows {nodes} nodes on {n_samples} samples",
            level.n
        )));
    }
    Ok(BoundState {
        level: *level,
        c2_over_c1: boundary_ratio(sys, e)?,
        norm,
        samples,
    })
}

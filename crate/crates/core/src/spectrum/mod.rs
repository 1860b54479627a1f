//! Bound-state spectrum: the exact condition in Hermite functions, its roots,
//! and the Airy, trigonometric, closed-form and energy-series approximations.

mod approx;
mod exact;
mod system;

use serde::Serialize;

pub use approx::{
    airy_hermite, calibrate_b2, closed_form_a, closed_form_a_arctan, energy_series,
    energy_series_leading, error_table, prefactor_f, transcendental_fn, transcendental_root,
    ApproxConstants, B2Calibration, B2Preset, B2Report, ErrorRow, B0_ROUND,
};
pub use exact::{
    exact_spectrum_fn, exact_spectrum_scale, find_roots, scan_roots, RootScan, ROOT_TOL,
};
pub use system::{a_of_energy, energy_of_a, eps_of_energy, PhysicalSystem};

/// How a level was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exact,
    Airy,
    Transcendental,
    ClosedForm,
    EnergySeries,
    Numerov,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::Airy => "airy",
            Method::Transcendental => "transcendental",
            Method::ClosedForm => "closed_form",
            Method::EnergySeries => "energy_series",
            Method::Numerov => "numerov",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralLevel {
    /// 1 for the ground state.
    pub n: usize,
    pub a_n: f64,
    pub energy: f64,
    pub method: Method,
}

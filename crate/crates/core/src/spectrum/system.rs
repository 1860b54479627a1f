use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Mass, ħ and the strengths V0, V1. The centrifugal strength 21ħ²/(32m) is implied.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalSystem {
    pub m: f64,
    pub hbar: f64,
    pub v0: f64,
    pub v1: f64,
}

impl Default for PhysicalSystem {
    fn default() -> Self {
        Self {
            m: 1.0,
            hbar: 1.0,
            v0: 0.0,
            v1: -1.0,
        }
    }
}

impl PhysicalSystem {
    pub fn new(m: f64, hbar: f64, v0: f64, v1: f64) -> Result<Self> {
        let s = Self { m, hbar, v0, v1 };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.m > 0.0 && self.m.is_finite()) || !(self.hbar > 0.0 && self.hbar.is_finite()) {
            return Err(Error::Domain(
                "m and hbar must be positive and finite".into(),
            ));
        }
        if !self.v0.is_finite() || !self.v1.is_finite() {
            return Err(Error::Domain("V0 and V1 must be finite".into()));
        }
        Ok(())
    }

    /// Bound states need an attractive well.
    pub fn require_well(&self) -> Result<()> {
        self.validate()?;
        if self.v1 >= 0.0 {
            return Err(Error::Domain(format!(
                "bound states need V1 < 0, got {}",
                self.v1
            )));
        }
        Ok(())
    }

    /// 21ħ²/(32m).
    pub fn centrifugal(&self) -> f64 {
        21.0 * self.hbar * self.hbar / (32.0 * self.m)
    }

    pub fn potential(&self, x: f64) -> f64 {
        self.v0 + self.v1 / x.sqrt() + self.centrifugal() / (x * x)
    }

    /// (m V1⁴ / 8ħ²)^{1/3}, the energy unit of the spectrum.
    pub fn energy_scale(&self) -> f64 {
        (self.m * self.v1.powi(4) / (8.0 * self.hbar * self.hbar)).cbrt()
    }

    /// m/ħ².
    pub fn k(&self) -> f64 {
        self.m / (self.hbar * self.hbar)
    }

    /// Outer classical turning point for E < V0 in a well (largest x with V(x) = E).
    pub fn outer_turning_point(&self, e: f64) -> Result<f64> {
        self.require_well()?;
        if e >= self.v0 {
            return Err(Error::Domain(format!(
                "E = {e} is not below V0 = {}",
                self.v0
            )));
        }
        // V - E = 0 is a quartic in y = √x: (V0-E) y⁴ + V1 y³ + C = 0.
        let d = self.v0 - e;
        let g = |y: f64| d * y.powi(4) + self.v1 * y.powi(3) + self.centrifugal();
        // g → +∞ at large y; start from the minimum of d y + V1, i.e. past y = -V1/d.
        let mut lo = -0.75 * self.v1 / d;
        if g(lo) > 0.0 {
            return Err(Error::Domain(format!(
                "E = {e} lies below the bottom of the well"
            )));
        }
        let mut hi = 2.0 * lo.max(1.0);
        while g(hi) <= 0.0 {
            hi *= 2.0;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if g(mid) > 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok((0.5 * (lo + hi)).powi(2))
    }
}

/// ε = √(8m(V0 − E))/ħ.
pub fn eps_of_energy(sys: &PhysicalSystem, e: f64) -> Result<f64> {
    sys.validate()?;
    if !(e < sys.v0) {
        return Err(Error::Domain(format!(
            "E = {e} must lie below V0 = {}",
            sys.v0
        )));
    }
    Ok((8.0 * sys.m * (sys.v0 - e)).sqrt() / sys.hbar)
}

/// a = m²V1²/ħ / (2m(V0 − E))^{3/2}.
pub fn a_of_energy(sys: &PhysicalSystem, e: f64) -> Result<f64> {
    sys.validate()?;
    if !(e < sys.v0) {
        return Err(Error::Domain(format!(
            "E = {e} must lie below V0 = {}",
            sys.v0
        )));
    }
    if sys.v1 == 0.0 {
        return Err(Error::Domain("a is undefined for V1 = 0".into()));
    }
    let num = sys.m * sys.m * sys.v1 * sys.v1 / sys.hbar;
    Ok(num / (2.0 * sys.m * (sys.v0 - e)).powf(1.5))
}

/// E = V0 − (mV1⁴/8ħ²)^{1/3} a^{-2/3}.
pub fn energy_of_a(sys: &PhysicalSystem, a: f64) -> Result<f64> {
    sys.validate()?;
    if !(a > 0.0) {
        return Err(Error::Domain(format!("a = {a} must be positive")));
    }
    Ok(sys.v0 - sys.energy_scale() * a.powf(-2.0 / 3.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eps_examples() {
        let s = PhysicalSystem::default();
        assert_eq!(eps_of_energy(&s, -2.0).unwrap(), 4.0);
        let s1 = PhysicalSystem { v0: 1.0, ..s };
        assert!(eps_of_energy(&s1, 1.0).is_err());
        let s2 = PhysicalSystem { m: 2.0, ..s };
        assert!((eps_of_energy(&s2, -1.0).unwrap() - 4.0).abs() < 1e-15);
    }

    #[test]
    fn a_energy_round_trip() {
        let s = PhysicalSystem::default();
        assert!((a_of_energy(&s, -0.125f64.cbrt()).unwrap() - 1.0).abs() < 1e-14);
        assert!((energy_of_a(&s, 1.0).unwrap() + 0.5).abs() < 1e-15);
        for &a in &[0.5, 1.5, 7.3] {
            let e = energy_of_a(&s, a).unwrap();
            assert!((a_of_energy(&s, e).unwrap() - a).abs() < 1e-12);
        }
        let s2 = PhysicalSystem { v1: -2.0, ..s };
        let ratio = a_of_energy(&s2, -0.3).unwrap() / a_of_energy(&s, -0.3).unwrap();
        assert!((ratio - 4.0).abs() < 1e-13);
        let s3 = PhysicalSystem { v1: 1.0, ..s };
        assert_eq!(
            energy_of_a(&s3, 2.0).unwrap(),
            energy_of_a(&s, 2.0).unwrap()
        );
        assert!(energy_of_a(&s, 1e12).unwrap() > -1e-7);
        assert!(energy_of_a(&s, 0.0).is_err());
    }

    #[test]
    fn turning_point_solves_v_eq_e() {
        let s = PhysicalSystem::default();
        let x = s.outer_turning_point(-0.3).unwrap();
        assert!((s.potential(x) + 0.3).abs() < 1e-12);
        assert!(s.potential(1.5 * x) > -0.3);
    }
}

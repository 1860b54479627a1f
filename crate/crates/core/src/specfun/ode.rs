//! Taylor-series marching for linear second-order ODEs with polynomial
//! coefficients. Used to carry a function from a point where it is known
//! accurately to one where no series or asymptotic form is usable.

const MAX_TERMS: usize = 80;
const TERM_TOL: f64 = 1e-18;

/// `y'' = (p0 + p1 x) y' + (q0 + q1 x) y`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct LinearOde2 {
    pub p0: f64,
    pub p1: f64,
    pub q0: f64,
    pub q1: f64,
}

#[derive(Debug, Clone, Copy)]
#[allow(dead_code)]
pub(crate) struct MarchResult {
    pub y: f64,
    pub dy: f64,
    pub steps: usize,
    /// Largest |y| met along the path, the scale of the rounding error.
    pub peak: f64,
}

impl LinearOde2 {
    /// Airy equation `y'' = x y`.
    pub fn airy() -> Self {
        Self {
            p0: 0.0,
            p1: 0.0,
            q0: 0.0,
            q1: 1.0,
        }
    }

    /// Hermite equation `y'' = 2x y' - 2ν y`.
    pub fn hermite(nu: f64) -> Self {
        Self {
            p0: 0.0,
            p1: 2.0,
            q0: -2.0 * nu,
            q1: 0.0,
        }
    }

    fn step_size(&self, x: f64) -> f64 {
        let p = self.p0 + self.p1 * x;
        let q = self.q0 + self.q1 * x;
        1.0 / (1.0 + p.abs() + q.abs().sqrt() + self.p1.abs().sqrt() + self.q1.abs().cbrt())
    }

    /// One Taylor step of length `h` from `x0`.
    fn step(&self, x0: f64, y: f64, dy: f64, h: f64) -> (f64, f64) {
        let pc = self.p0 + self.p1 * x0;
        let qc = self.q0 + self.q1 * x0;
        // c[k] are Taylor coefficients scaled by h^k
        let mut c_km1 = 0.0;
        let mut c_k = y;
        let mut c_kp1 = dy * h;
        let mut sum_y = c_k + c_kp1;
        let mut sum_dy = c_kp1;
        let mut small = 0;
        for k in 0..MAX_TERMS {
            let kf = k as f64;
            let next = (pc * (kf + 1.0) * c_kp1 * h
                + (self.p1 * kf + qc) * c_k * h * h
                + self.q1 * c_km1 * h * h * h)
                / ((kf + 2.0) * (kf + 1.0));
            sum_y += next;
            sum_dy += (kf + 2.0) * next;
            c_km1 = c_k;
            c_k = c_kp1;
            c_kp1 = next;
            let scale = sum_y.abs().max(sum_dy.abs()).max(f64::MIN_POSITIVE);
            if next.abs() * (kf + 2.0) < TERM_TOL * scale {
                small += 1;
                if small >= 2 {
                    break;
                }
            } else {
                small = 0;
            }
        }
        (sum_y, sum_dy / h)
    }

    pub fn march(&self, x0: f64, y0: f64, dy0: f64, x1: f64) -> MarchResult {
        let dir = (x1 - x0).signum();
        let (mut x, mut y, mut dy) = (x0, y0, dy0);
        let mut steps = 0;
        let mut peak = y.abs();
        while (x1 - x) * dir > 0.0 {
            let h = self.step_size(x).min((x1 - x).abs());
            let (ny, ndy) = self.step(x, y, dy, h * dir);
            y = ny;
            dy = ndy;
            x = if (x1 - x).abs() <= h { x1 } else { x + h * dir };
            steps += 1;
            peak = peak.max(y.abs());
        }
        MarchResult { y, dy, steps, peak }
    }
}

/// Backward/forward marching for Kummer's equation `x y'' + (b - x) y' - a y = 0`,
/// which has a regular singular point at 0, so steps are capped at x/4.
pub(crate) fn march_kummer(a: f64, b: f64, x0: f64, y0: f64, dy0: f64, x1: f64) -> MarchResult {
    assert!(x0 > 0.0 && x1 > 0.0);
    let dir = (x1 - x0).signum();
    let (mut x, mut y, mut dy) = (x0, y0, dy0);
    let mut steps = 0;
    let mut peak = y.abs();
    while (x1 - x) * dir > 0.0 {
        let h_cap = (x / 4.0).min(1.0 / (1.0 + (a.abs() / x).sqrt()));
        let h = h_cap.min((x1 - x).abs());
        let t = h * dir;
        let mut c_k = y;
        let mut c_kp1 = dy * t;
        let mut sum_y = c_k + c_kp1;
        let mut sum_dy = c_kp1;
        let mut small = 0;
        for k in 0..MAX_TERMS {
            let kf = k as f64;
            let next = ((x - b - kf) * (kf + 1.0) * c_kp1 * t + (kf + a) * c_k * t * t)
                / (x * (kf + 2.0) * (kf + 1.0));
            sum_y += next;
            sum_dy += (kf + 2.0) * next;
            c_k = c_kp1;
            c_kp1 = next;
            let scale = sum_y.abs().max(sum_dy.abs()).max(f64::MIN_POSITIVE);
            if next.abs() * (kf + 2.0) < TERM_TOL * scale {
                small += 1;
                if small >= 2 {
                    break;
                }
            } else {
                small = 0;
            }
        }
        y = sum_y;
        dy = sum_dy / t;
        x = if (x1 - x).abs() <= h { x1 } else { x + t };
        steps += 1;
        peak = peak.max(y.abs());
    }
    MarchResult { y, dy, steps, peak }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn march_reproduces_exponential() {
        // y'' = y with y = e^x
        let ode = LinearOde2 {
            p0: 0.0,
            p1: 0.0,
            q0: 1.0,
            q1: 0.0,
        };
        let r = ode.march(0.0, 1.0, 1.0, 3.0);
        assert!((r.y - 3f64.exp()).abs() < 1e-13 * 3f64.exp());
        assert!((r.dy - 3f64.exp()).abs() < 1e-13 * 3f64.exp());
    }

    #[test]
    fn hermite_march_tracks_polynomial() {
        // H_3 = 8x^3 - 12x
        let ode = LinearOde2::hermite(3.0);
        let r = ode.march(0.0, 0.0, -12.0, -2.5);
        let exact = 8.0 * (-2.5f64).powi(3) + 30.0;
        assert!((r.y - exact).abs() < 1e-12 * exact.abs(), "{}", r.y);
    }

    #[test]
    fn kummer_march_tracks_exponential() {
        // M(1,1,x) = e^x solves Kummer's equation with a = b = 1
        let r = march_kummer(1.0, 1.0, 5.0, 5f64.exp(), 5f64.exp(), 0.5);
        assert!((r.y - 0.5f64.exp()).abs() < 1e-13);
    }
}

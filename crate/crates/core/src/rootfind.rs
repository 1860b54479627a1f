//! Bracketed root refinement shared by the spectrum solvers.

use crate::error::{Error, Result};

/// A function value with an absolute error bound.
#[derive(Debug, Clone, Copy)]
pub struct Sample {
    pub value: f64,
    pub abs_error: f64,
}

impl Sample {
    pub fn exact(value: f64) -> Self {
        Self {
            value,
            abs_error: 0.0,
        }
    }

    fn sign_reliable(&self) -> bool {
        self.value.abs() > self.abs_error
    }
}

/// Refine a sign change of `f` on `[lo, hi]` until the bracket is narrower
/// than `tol`. Regula falsi with the Illinois modification, falling back to
/// bisection whenever the bracket fails to halve.
///
/// Returns `Bracket` if the endpoints share a sign and `PrecisionExhausted`
/// (with `found = 0`) if the function's error bound swamps its value while
/// the implied uncertainty in the root still exceeds `tol`.
pub fn refine<F>(mut f: F, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<Sample>,
{
    let mut flo = f(lo)?;
    let mut fhi = f(hi)?;
    if flo.value == 0.0 {
        return Ok(lo);
    }
    if fhi.value == 0.0 {
        return Ok(hi);
    }
    if flo.value.signum() == fhi.value.signum() {
        return Err(Error::Bracket(format!("no sign change on [{lo}, {hi}]")));
    }
    let mut side = 0i8;
    let mut width = hi - lo;
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mut x = (lo * fhi.value - hi * flo.value) / (fhi.value - flo.value);
        let bisect = !(x > lo && x < hi) || (hi - lo) > 0.5 * width;
        if bisect {
            x = 0.5 * (lo + hi);
        }
        width = hi - lo;
        let fx = f(x)?;
        if fx.value == 0.0 {
            return Ok(x);
        }
        if !fx.sign_reliable() {
            // the root lies within abs_error/|slope| of x
            let slope = (f(hi)?.value - f(lo)?.value) / (hi - lo);
            if hi - lo <= tol || fx.abs_error <= tol * slope.abs() {
                return Ok(x);
            }
            return Err(Error::PrecisionExhausted {
                found: 0,
                reason: format!(
                    "value {:e} at a = {x} is below its error bound {:e}; bracket [{lo}, {hi}]",
                    fx.value, fx.abs_error
                ),
            });
        }
        if fx.value.signum() == flo.value.signum() {
            lo = x;
            flo = fx;
            if side == -1 {
                fhi.value *= 0.5;
            }
            side = -1;
        } else {
            hi = x;
            fhi = fx;
            if side == 1 {
                flo.value *= 0.5;
            }
            side = 1;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Sign changes of `f` on the uniform grid `start, start + step, ...` up to
/// `end`, as `(lo, hi)` brackets. Exact zeros on the grid yield a degenerate
/// bracket around the node.
pub fn scan_brackets<F>(mut f: F, start: f64, end: f64, step: f64) -> Result<Vec<(f64, f64)>>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut out = Vec::new();
    let n = ((end - start) / step).ceil() as usize;
    let mut x_prev = start;
    let mut f_prev = f(start)?;
    for i in 1..=n {
        let x = (start + i as f64 * step).min(end);
        let fx = f(x)?;
        if f_prev == 0.0 {
            out.push((x_prev - 0.5 * step, x_prev + 0.5 * step));
        } else if fx != 0.0 && f_prev.signum() != fx.signum() {
            out.push((x_prev, x));
        }
        x_prev = x;
        f_prev = fx;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_cube_root() {
        let r = refine(|x| Ok(Sample::exact(x * x * x - 2.0)), 0.0, 2.0, 1e-14).unwrap();
        assert!((r - 2f64.cbrt()).abs() < 1e-13);
    }

    #[test]
    fn rejects_same_sign() {
        assert!(matches!(
            refine(|x| Ok(Sample::exact(x * x + 1.0)), -1.0, 1.0, 1e-12),
            Err(Error::Bracket(_))
        ));
    }

    #[test]
    fn reports_noise_floor() {
        let r = refine(
            |x| {
                Ok(Sample {
                    value: x * x - 0.1,
                    abs_error: 1e-6,
                })
            },
            0.0,
            1.0,
            1e-12,
        );
        assert!(matches!(r, Err(Error::PrecisionExhausted { .. })));
    }

    #[test]
    fn scan_finds_sine_zeros() {
        let b = scan_brackets(|x| Ok(x.sin()), 0.5, 10.0, 0.1).unwrap();
        assert_eq!(b.len(), 3);
        for (k, (lo, hi)) in b.iter().enumerate() {
            let z = std::f64::consts::PI * (k + 1) as f64;
            assert!(*lo <= z && z <= *hi);
        }
    }
}

//! Double-double evaluation of Γ, ₁F₁, U, Airy and the Hermite function,
//! written independently of `specfun` (different representation, different
//! algorithms) so that the two can referee each other.
//!
//! Every result carries a running bound on its absolute error. `certified`
//! is set when that bound meets the requested number of digits.

use super::dd::{DoubleDouble as DD, DD_EPS};
use crate::error::{Error, Result};

pub const MAX_DIGITS: u32 = 50;
pub const GUARANTEED_DIGITS: u32 = 30;
pub const MAX_ABS_Z: f64 = 20.0;
pub const MAX_ABS_NU: f64 = 60.0;

const STIRLING_SHIFT: f64 = 40.0;
const SERIES_CAP: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HighPrec {
    pub value: DD,
    pub abs_error: f64,
    pub certified: bool,
}

impl HighPrec {
    fn new(value: DD, abs_error: f64) -> Self {
        Self {
            value,
            abs_error,
            certified: false,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    pub fn rel_error(&self) -> f64 {
        self.abs_error / self.value.to_f64().abs().max(f64::MIN_POSITIVE)
    }

    fn certify(mut self, digits: u32) -> Self {
        let tol = 10f64.powi(-(digits as i32)) * self.value.to_f64().abs().max(1.0);
        self.certified = self.abs_error <= tol;
        self
    }
}

/// B_{2k} for k = 1..15.
const BERNOULLI: [(f64, f64); 15] = [
    (1.0, 6.0),
    (-1.0, 30.0),
    (1.0, 42.0),
    (-1.0, 30.0),
    (5.0, 66.0),
    (-691.0, 2730.0),
    (7.0, 6.0),
    (-3617.0, 510.0),
    (43867.0, 798.0),
    (-174_611.0, 330.0),
    (854_513.0, 138.0),
    (-236_364_091.0, 2730.0),
    (8_553_103.0, 6.0),
    (-23_749_461_029.0, 870.0),
    (8_615_841_276_005.0, 14322.0),
];

fn is_nonpositive_integer(x: DD) -> bool {
    x.hi <= 0.0 && x.lo == 0.0 && x.hi.fract() == 0.0
}

/// sin(πx) with reduction to |r| <= 1/2 done in double-double.
pub fn sin_pi_dd(x: DD) -> DD {
    let n = x.hi.round();
    let r = x - n;
    let mut sum = DD::ZERO;
    let theta = DD::PI * r;
    let t2 = theta.sqr();
    let mut term = theta;
    for k in 0..30 {
        sum += term;
        let kf = (2 * k + 2) as f64;
        term = -(term * t2) / (kf * (kf + 1.0));
        if term.hi.abs() < 1e-36 {
            break;
        }
    }
    if (n as i64).rem_euclid(2) == 1 {
        -sum
    } else {
        sum
    }
}

fn ln_gamma_stirling(y: DD) -> DD {
    let half_ln_2pi = (DD::PI * 2.0).ln() * 0.5;
    let mut s = (y - 0.5) * y.ln() - y + half_ln_2pi;
    let inv = y.recip();
    let inv2 = inv.sqr();
    let mut pw = inv;
    for (k, &(num, den)) in BERNOULLI.iter().enumerate() {
        let k2 = 2.0 * (k as f64 + 1.0);
        s += pw * DD::from_ratio(num, den) / (k2 * (k2 - 1.0));
        pw *= inv2;
    }
    s
}

/// Γ(x) in double-double with its relative error bound.
pub fn gamma_dd(x: DD) -> Result<(DD, f64)> {
    if is_nonpositive_integer(x) {
        return Err(Error::Pole {
            function: "gamma_dd",
            at: x.hi,
        });
    }
    if x.hi < 0.5 {
        let (g, rel) = gamma_dd(DD::ONE - x)?;
        let s = sin_pi_dd(x);
        return Ok((DD::PI / (s * g), rel + 16.0 * DD_EPS * (1.0 + x.hi.abs())));
    }
    let mut y = x;
    let mut prod = DD::ONE;
    let mut shifts = 0.0;
    while y.hi < STIRLING_SHIFT {
        prod *= y;
        y = y + 1.0;
        shifts += 1.0;
    }
    let lg = ln_gamma_stirling(y);
    let rel = DD_EPS * (32.0 + 8.0 * lg.hi.abs() + 4.0 * shifts);
    if lg.hi > 700.0 {
        return Err(Error::Overflow {
            function: "gamma_dd",
            at: x.hi,
        });
    }
    Ok((lg.exp() / prod, rel))
}

/// 1/Γ(x), zero at the poles.
pub fn rgamma_dd(x: DD) -> Result<(DD, f64)> {
    if is_nonpositive_integer(x) {
        return Ok((DD::ZERO, 0.0));
    }
    let (g, rel) = gamma_dd(x)?;
    Ok((g.recip(), rel + 2.0 * DD_EPS))
}

/// Power series of ₁F₁ in double-double; the bound covers rounding in every
/// term and the truncated tail.
fn m_series_dd(a: DD, b: DD, z: DD) -> Result<HighPrec> {
    let mut sum = DD::ONE;
    let mut term = DD::ONE;
    let mut weighted = 1.0;
    let mut small = 0;
    for n in 0..SERIES_CAP {
        let nf = n as f64;
        term = term * (a + nf) / (b + nf) * z / (nf + 1.0);
        sum += term;
        weighted += term.hi.abs() * (nf + 2.0);
        if term.is_zero() {
            return Ok(HighPrec::new(sum, 8.0 * DD_EPS * weighted));
        }
        let past_peak = nf > z.hi.abs() - a.hi - b.hi;
        if past_peak && term.hi.abs() < 1e-34 * sum.hi.abs() {
            small += 1;
            if small >= 2 {
                return Ok(HighPrec::new(
                    sum,
                    8.0 * DD_EPS * weighted + 2.0 * term.hi.abs(),
                ));
            }
        } else {
            small = 0;
        }
    }
    Err(Error::NoConvergence {
        function: "kummer_m_dd",
        reason: "series cap reached".into(),
    })
}

pub fn kummer_m_dd(a: DD, b: DD, z: DD) -> Result<HighPrec> {
    if is_nonpositive_integer(b) {
        return Err(Error::Parameter {
            function: "kummer_m_dd",
            reason: "b is a pole".into(),
        });
    }
    if z.hi < 0.0 && !is_nonpositive_integer(a) {
        let inner = m_series_dd(b - a, b, -z)?;
        let e = z.exp();
        return Ok(HighPrec::new(
            inner.value * e,
            inner.abs_error * e.hi + 4.0 * DD_EPS * (1.0 + z.hi.abs()) * (inner.value * e).hi.abs(),
        ));
    }
    m_series_dd(a, b, z)
}

/// U by the connection formula, b not an integer.
pub fn tricomi_u_dd(a: DD, b: DD, z: DD) -> Result<HighPrec> {
    if b.lo == 0.0 && b.hi.fract() == 0.0 {
        return Err(Error::Parameter {
            function: "tricomi_u_dd",
            reason: "integer b needs a limiting form".into(),
        });
    }
    if z.hi <= 0.0 {
        return Err(Error::Domain("tricomi_u_dd requires z > 0".into()));
    }
    let (g1, e1) = gamma_dd(DD::ONE - b)?;
    let (g2, e2) = gamma_dd(b - 1.0)?;
    let (r1, f1) = rgamma_dd(a - b + 1.0)?;
    let (r2, f2) = rgamma_dd(a)?;
    let m1 = kummer_m_dd(a, b, z)?;
    let m2 = kummer_m_dd(a - b + 1.0, DD::from_f64(2.0) - b, z)?;
    let zp = z.powf(DD::ONE - b);
    let w1 = g1 * r1;
    let w2 = g2 * r2 * zp;
    let t1 = w1 * m1.value;
    let t2 = w2 * m2.value;
    let err = w1.hi.abs() * m1.abs_error
        + w2.hi.abs() * m2.abs_error
        + t1.hi.abs() * (e1 + f1 + 8.0 * DD_EPS)
        + t2.hi.abs() * (e2 + f2 + 8.0 * DD_EPS * (1.0 + z.hi.ln().abs()));
    Ok(HighPrec::new(t1 + t2, err))
}

/// Ai(x), Bi(x) by their Maclaurin series in double-double.
pub fn airy_dd(x: f64) -> Result<(HighPrec, HighPrec)> {
    if x.abs() > 12.0 {
        return Err(Error::Range(format!("airy_dd supports |x| <= 12, got {x}")));
    }
    let three = DD::from_f64(3.0);
    let (g23, e23) = gamma_dd(DD::from_ratio(2.0, 3.0))?;
    let (g13, e13) = gamma_dd(DD::from_ratio(1.0, 3.0))?;
    let c1 = three.powf(DD::from_ratio(-2.0, 3.0)) / g23;
    let c2 = three.powf(DD::from_ratio(-1.0, 3.0)) / g13;
    let xd = DD::from_f64(x);
    let x3 = xd * xd * xd;
    let (mut f, mut g) = (DD::ONE, xd);
    let (mut tf, mut tg) = (DD::ONE, xd);
    let (mut af, mut ag) = (1.0, x.abs());
    for k in 0..200 {
        let k3 = 3.0 * k as f64;
        tf = tf * x3 / ((k3 + 2.0) * (k3 + 3.0));
        tg = tg * x3 / ((k3 + 3.0) * (k3 + 4.0));
        f += tf;
        g += tg;
        af += tf.hi.abs() * (k as f64 + 2.0);
        ag += tg.hi.abs() * (k as f64 + 2.0);
        if tf.hi.abs() < 1e-40 && tg.hi.abs() < 1e-40 {
            break;
        }
    }
    let rel_c = e23.max(e13) + 64.0 * DD_EPS;
    let ai = c1 * f - c2 * g;
    let bi = (c1 * f + c2 * g) * three.sqrt();
    let base = c1.hi * af + c2.hi * ag;
    let ai_err = 8.0 * DD_EPS * base + rel_c * (c1 * f).hi.abs().max((c2 * g).hi.abs()) * 2.0;
    let bi_err = 3f64.sqrt() * ai_err;
    Ok((HighPrec::new(ai, ai_err), HighPrec::new(bi, bi_err)))
}

fn hermite_poly_dd(n: usize, z: DD) -> HighPrec {
    if n == 0 {
        return HighPrec::new(DD::ONE, 0.0);
    }
    let (mut h0, mut h1) = (DD::ONE, z * 2.0);
    let (mut a0, mut a1) = (1.0, 2.0 * z.hi.abs());
    for k in 1..n {
        let kf = k as f64;
        let h2 = z * h1 * 2.0 - h0 * (2.0 * kf);
        let a2 = 2.0 * z.hi.abs() * a1 + 2.0 * kf * a0;
        h0 = h1;
        h1 = h2;
        a0 = a1;
        a1 = a2;
    }
    HighPrec::new(h1, 4.0 * n as f64 * DD_EPS * a1)
}

/// H_ν(z) = 2^ν √π [M(-ν/2, 1/2, z²)/Γ((1-ν)/2) - 2z M((1-ν)/2, 3/2, z²)/Γ(-ν/2)].
fn hermite_two_m(nu: DD, z: DD) -> Result<HighPrec> {
    let x = z.sqr();
    let half = DD::from_f64(0.5);
    let a1 = -(nu * 0.5);
    let a2 = (DD::ONE - nu) * 0.5;
    let pre = (nu * DD::LN2).exp() * DD::PI.sqrt();
    let (r1, e1) = rgamma_dd(a2)?;
    let (r2, e2) = rgamma_dd(a1)?;
    let mut t1 = HighPrec::new(DD::ZERO, 0.0);
    if !r1.is_zero() {
        let m = kummer_m_dd(a1, half, x)?;
        t1 = HighPrec::new(pre * r1 * m.value, (pre * r1).hi.abs() * m.abs_error);
        t1.abs_error += t1.value.hi.abs() * (e1 + 16.0 * DD_EPS * (1.0 + nu.hi.abs()));
    }
    let mut t2 = HighPrec::new(DD::ZERO, 0.0);
    if !r2.is_zero() {
        let m = kummer_m_dd(a2, DD::from_f64(1.5), x)?;
        let w = pre * r2 * z * 2.0;
        t2 = HighPrec::new(w * m.value, w.hi.abs() * m.abs_error);
        t2.abs_error += t2.value.hi.abs() * (e2 + 16.0 * DD_EPS * (1.0 + nu.hi.abs()));
    }
    Ok(HighPrec::new(
        t1.value - t2.value,
        t1.abs_error + t2.abs_error,
    ))
}

/// (2z)^ν ₂F₀(-ν/2, (1-ν)/2; ; -1/z²) for z > 0, truncated at the smallest term.
fn hermite_asymptotic(nu: DD, z: DD) -> Option<HighPrec> {
    let x = z.sqr();
    let a = -(nu * 0.5);
    let c = (DD::ONE - nu) * 0.5;
    let mut sum = DD::ONE;
    let mut term = DD::ONE;
    let mut weighted = 1.0;
    let mut last = f64::INFINITY;
    for n in 0..2000 {
        let nf = n as f64;
        let next = -(term * (a + nf) * (c + nf)) / (x * (nf + 1.0));
        if next.is_zero() {
            last = 0.0;
            break;
        }
        if next.hi.abs() > term.hi.abs() && n > 0 {
            last = term.hi.abs();
            break;
        }
        term = next;
        sum += term;
        weighted += term.hi.abs() * (nf + 2.0);
        if term.hi.abs() < 1e-36 * sum.hi.abs() {
            last = term.hi.abs();
            break;
        }
    }
    if !last.is_finite() {
        return None;
    }
    let lnp = nu * (z * 2.0).ln();
    if lnp.hi > 700.0 {
        return None;
    }
    let p = lnp.exp();
    let v = p * sum;
    let err = p.hi.abs() * (last + 8.0 * DD_EPS * weighted)
        + v.hi.abs() * 8.0 * DD_EPS * (1.0 + lnp.hi.abs());
    Some(HighPrec::new(v, err))
}

/// Hermite function of real order in double-double. Digits up to 30 are
/// achievable on most of the box; up to 50 is best effort and reported
/// through `certified`.
pub fn highprec_hermite(nu: f64, z: f64, digits: u32) -> Result<HighPrec> {
    if digits == 0 || digits > MAX_DIGITS {
        return Err(Error::Range(format!(
            "digits must lie in 1..={MAX_DIGITS}, got {digits}"
        )));
    }
    if !(z.abs() <= MAX_ABS_Z) || !(nu.abs() <= MAX_ABS_NU) {
        return Err(Error::Range(format!(
            "highprec_hermite supports |z| <= {MAX_ABS_Z}, |nu| <= {MAX_ABS_NU}; got nu = {nu}, z = {z}"
        )));
    }
    Ok(hermite_dd(DD::from_f64(nu), DD::from_f64(z))?.certify(digits))
}

/// H_ν(z) for double-double order and argument, uncertified.
pub fn hermite_dd(nu: DD, z: DD) -> Result<HighPrec> {
    if nu.hi >= 0.0 && nu.lo == 0.0 && nu.hi.fract() == 0.0 {
        return Ok(hermite_poly_dd(nu.hi as usize, z));
    }
    let direct = hermite_two_m(nu, z);
    let asym = if z.hi > 0.0 {
        hermite_asymptotic(nu, z)
    } else {
        None
    };
    match (direct, asym) {
        (Ok(d), Some(a)) => Ok(if a.abs_error < d.abs_error { a } else { d }),
        (Ok(d), None) => Ok(d),
        (Err(_), Some(a)) => Ok(a),
        (Err(e), None) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: DD, b: DD) -> f64 {
        ((a - b).hi / b.hi).abs()
    }

    #[test]
    fn gamma_half_squared_is_pi() {
        let (g, err) = gamma_dd(DD::from_f64(0.5)).unwrap();
        assert!(rel(g * g, DD::PI) < 1e-29, "{:?}", g);
        assert!(err < 1e-28);
    }

    #[test]
    fn gamma_integer_values() {
        let (g, _) = gamma_dd(DD::from_f64(11.0)).unwrap();
        assert!(rel(g, DD::from_f64(3_628_800.0)) < 1e-29);
        let (g, _) = gamma_dd(DD::from_f64(-2.5)).unwrap();
        // Γ(-5/2) = -8√π/15
        let exact = -(DD::PI.sqrt() * 8.0) / 15.0;
        assert!(rel(g, exact) < 1e-29);
    }

    #[test]
    fn sin_pi_symmetries() {
        assert!(sin_pi_dd(DD::from_f64(3.0)).hi.abs() < 1e-40);
        let s = sin_pi_dd(DD::from_f64(2.5));
        assert!(rel(s, DD::ONE) < 1e-31);
        let s = sin_pi_dd(DD::from_ratio(1.0, 6.0));
        assert!(rel(s, DD::from_f64(0.5)) < 1e-31);
    }

    #[test]
    fn kummer_exponential() {
        let m = kummer_m_dd(DD::ONE, DD::ONE, DD::from_f64(2.5)).unwrap();
        let e = DD::from_f64(2.5).exp();
        assert!(rel(m.value, e) < 1e-30);
        assert!(m.abs_error < 1e-29 * e.hi);
    }

    #[test]
    fn integer_hermite_is_exact() {
        // H_6(z) = 64z^6 - 480z^4 + 720z^2 - 120
        let z: f64 = 1.1;
        let h = highprec_hermite(6.0, z, 25).unwrap();
        let exact = 64.0 * z.powi(6) - 480.0 * z.powi(4) + 720.0 * z * z - 120.0;
        assert!((h.to_f64() - exact).abs() < 1e-12);
        assert!(h.certified);
    }

    #[test]
    fn two_routes_agree_on_the_right() {
        let nu = DD::from_f64(3.3);
        let z = DD::from_f64(6.5);
        let a = hermite_asymptotic(nu, z).unwrap();
        let d = hermite_two_m(nu, z).unwrap();
        assert!(rel(a.value, d.value) < 1e-12, "{:?} {:?}", a, d);
    }

    #[test]
    fn range_checks() {
        assert!(highprec_hermite(1.5, 25.0, 20).is_err());
        assert!(highprec_hermite(70.5, 1.0, 20).is_err());
        assert!(highprec_hermite(1.5, 1.0, 51).is_err());
    }

    #[test]
    fn airy_origin() {
        let (ai, bi) = airy_dd(0.0).unwrap();
        assert!((ai.to_f64() - 0.355_028_053_887_817_2).abs() < 1e-16);
        assert!((bi.to_f64() - 0.614_926_627_446_000_7).abs() < 1e-16);
    }
}

//! Double-double arithmetic: an unevaluated sum `hi + lo` with |lo| <= ulp(hi)/2,
//! giving roughly 32 significant decimal digits.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use crate::numeric::{two_prod, two_sum};

#[derive(Clone, Copy, Default, PartialEq)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

/// Unit roundoff of the format (2^-104).
pub const DD_EPS: f64 = 4.930_380_657_631_324e-32;

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

impl DoubleDouble {
    pub const ZERO: Self = Self { hi: 0.0, lo: 0.0 };
    pub const ONE: Self = Self { hi: 1.0, lo: 0.0 };
    pub const PI: Self = Self {
        hi: std::f64::consts::PI,
        lo: 1.224_646_799_147_353_2e-16,
    };
    pub const LN2: Self = Self {
        hi: std::f64::consts::LN_2,
        lo: 2.319_046_813_846_299_6e-17,
    };

    #[inline]
    pub const fn new(hi: f64, lo: f64) -> Self {
        Self { hi, lo }
    }

    #[inline]
    pub const fn from_f64(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    /// Exact ratio of two integers representable in f64, correctly rounded to double-double.
    pub fn from_ratio(num: f64, den: f64) -> Self {
        Self::from_f64(num) / Self::from_f64(den)
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    pub fn is_zero(self) -> bool {
        self.hi == 0.0
    }

    pub fn mul_pow2(self, k: i32) -> Self {
        let s = 2f64.powi(k);
        Self::new(self.hi * s, self.lo * s)
    }

    pub fn sqr(self) -> Self {
        self * self
    }

    pub fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return Self::ZERO;
        }
        let y = self.hi.sqrt();
        let ydd = Self::from_f64(y);
        // one Newton step in double-double
        let r = self - ydd * ydd;
        ydd + r / (2.0 * y)
    }

    pub fn recip(self) -> Self {
        Self::ONE / self
    }

    pub fn powi(self, n: i32) -> Self {
        if n == 0 {
            return Self::ONE;
        }
        let mut base = self;
        let mut e = n.unsigned_abs();
        let mut acc = Self::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base = base.sqr();
            e >>= 1;
        }
        if n < 0 {
            acc.recip()
        } else {
            acc
        }
    }

    pub fn exp(self) -> Self {
        if self.hi > 709.0 {
            return Self::from_f64(f64::INFINITY);
        }
        if self.hi < -745.0 {
            return Self::ZERO;
        }
        let k = (self.hi / std::f64::consts::LN_2).round();
        let r = self - Self::LN2 * k;
        // scale down by 2^-10 so the Taylor series converges fast
        let r = r.mul_pow2(-10);
        let mut term = Self::ONE;
        let mut sum = Self::ZERO;
        for i in 1..=22 {
            term = term * r / (i as f64);
            sum += term;
            if term.hi.abs() < 1e-36 {
                break;
            }
        }
        // (1 + sum)^(2^10) computed as repeated squaring of expm1 form
        for _ in 0..10 {
            sum = sum * 2.0 + sum.sqr();
        }
        (sum + 1.0).mul_pow2(k as i32)
    }

    pub fn ln(self) -> Self {
        assert!(self.hi > 0.0, "ln of non-positive double-double");
        let mut y = Self::from_f64(self.hi.ln());
        for _ in 0..2 {
            y = y + self * (-y).exp() - 1.0;
        }
        y
    }

    /// `self^p` for positive `self`.
    pub fn powf(self, p: Self) -> Self {
        (p * self.ln()).exp()
    }
}

impl fmt::Debug for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DD({:e} + {:e})", self.hi, self.lo)
    }
}

impl PartialOrd for DoubleDouble {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            o => o,
        }
    }
}

impl From<f64> for DoubleDouble {
    fn from(x: f64) -> Self {
        Self::from_f64(x)
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.hi, -self.lo)
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, b: Self) -> Self {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (s, e) = quick_two_sum(s, e + f);
        Self::new(s, e)
    }
}

impl Add<f64> for DoubleDouble {
    type Output = Self;
    fn add(self, b: f64) -> Self {
        let (s, e) = two_sum(self.hi, b);
        let (s, e) = quick_two_sum(s, e + self.lo);
        Self::new(s, e)
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Sub<f64> for DoubleDouble {
    type Output = Self;
    fn sub(self, b: f64) -> Self {
        self + (-b)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (p, e) = quick_two_sum(p, e);
        Self::new(p, e)
    }
}

impl Mul<f64> for DoubleDouble {
    type Output = Self;
    fn mul(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let e = e + self.lo * b;
        let (p, e) = quick_two_sum(p, e);
        Self::new(p, e)
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, b: Self) -> Self {
        let q1 = self.hi / b.hi;
        let r = self - b * q1;
        let q2 = r.hi / b.hi;
        let r = r - b * q2;
        let q3 = r.hi / b.hi;
        let (q1, q2) = quick_two_sum(q1, q2);
        Self::new(q1, q2) + q3
    }
}

impl Div<f64> for DoubleDouble {
    type Output = Self;
    fn div(self, b: f64) -> Self {
        self / Self::from_f64(b)
    }
}

impl AddAssign for DoubleDouble {
    fn add_assign(&mut self, b: Self) {
        *self = *self + b;
    }
}

impl SubAssign for DoubleDouble {
    fn sub_assign(&mut self, b: Self) {
        *self = *self - b;
    }
}

impl MulAssign for DoubleDouble {
    fn mul_assign(&mut self, b: Self) {
        *self = *self * b;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type DD = DoubleDouble;

    fn close(a: DD, b: DD, tol: f64) -> bool {
        ((a - b).abs().to_f64()) <= tol * b.abs().to_f64().max(1e-300)
    }

    #[test]
    fn division_round_trips() {
        let third = DD::from_ratio(1.0, 3.0);
        let back = third * 3.0;
        assert!(close(back, DD::ONE, 1e-31));
    }

    #[test]
    fn sqrt_two_squared() {
        let r = DD::from_f64(2.0).sqrt();
        assert!(close(r * r, DD::from_f64(2.0), 1e-31));
    }

    #[test]
    fn exp_ln_round_trip() {
        for &x in &[0.1, 1.0, 2.5, -7.25, 30.0] {
            let v = DD::from_f64(x);
            assert!(close(v.exp().ln(), v, 1e-30), "x = {x}");
        }
        // e to 32 digits: 2.71828182845904523536028747135266...
        let e = DD::ONE.exp();
        let reference = DD::new(std::f64::consts::E, 1.445_646_891_729_250_2e-16);
        assert!(close(e, reference, 1e-31));
    }

    #[test]
    fn pi_constant_matches_four_atan_like_series() {
        // Machin: pi = 16 atan(1/5) - 4 atan(1/239)
        fn atan_inv(n: f64) -> DD {
            let x = DD::from_ratio(1.0, n);
            let x2 = x * x;
            let mut term = x;
            let mut sum = x;
            for k in 1..60 {
                term = -(term * x2);
                sum += term / (2 * k + 1) as f64;
            }
            sum
        }
        let pi = atan_inv(5.0) * 16.0 - atan_inv(239.0) * 4.0;
        assert!(close(pi, DD::PI, 1e-31));
    }

    #[test]
    fn powi_matches_repeated_product() {
        let x = DD::from_ratio(7.0, 3.0);
        let mut p = DD::ONE;
        for _ in 0..13 {
            p *= x;
        }
        assert!(close(x.powi(13), p, 1e-30));
        assert!(close(x.powi(-2) * x.powi(2), DD::ONE, 1e-31));
    }
}

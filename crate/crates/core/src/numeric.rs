//! Error-free transformations and compensated accumulation.

/// `a + b = s + e` exactly.
#[inline]
pub fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

/// `a * b = p + e` exactly (relies on fused multiply-add).
#[inline]
pub fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

/// Neumaier-style compensated sum that also tracks the magnitude of what
/// went into it, so callers can judge cancellation.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
    abs_sum: f64,
    max_term: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let (s, e) = two_sum(self.sum, x);
        self.sum = s;
        self.comp += e;
        self.abs_sum += x.abs();
        self.max_term = self.max_term.max(x.abs());
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }

    /// Residual compensation term not representable in the result.
    pub fn compensation(&self) -> f64 {
        let v = self.value();
        ((self.sum - v) + self.comp).abs()
    }

    pub fn abs_sum(&self) -> f64 {
        self.abs_sum
    }

    pub fn max_term(&self) -> f64 {
        self.max_term
    }
}

/// Evaluate a polynomial with ascending coefficients at `x` (Horner).
pub fn poly_eval(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc.mul_add(x, c))
}

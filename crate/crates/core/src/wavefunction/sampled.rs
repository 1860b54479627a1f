use serde::Serialize;

use crate::error::{Error, Result};

/// Samples below this fraction of the peak are treated as zero when counting nodes.
pub const NODE_FLOOR: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleMeta {
    pub x_unit: String,
    pub normalized: bool,
}

/// An ordered grid of (x, value) pairs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampledFunction {
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    pub meta: SampleMeta,
}

impl SampledFunction {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>, meta: SampleMeta) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::Domain(format!(
                "{} abscissae but {} values",
                xs.len(),
                ys.len()
            )));
        }
        if xs.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Domain(
                "abscissae must be strictly increasing".into(),
            ));
        }
        Ok(Self { xs, ys, meta })
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn peak(&self) -> f64 {
        self.ys.iter().fold(0.0, |m, y| m.max(y.abs()))
    }

    /// ∫ f g dx over the grid by piecewise-quadratic (Simpson) rules on
    /// interval pairs, with a trapezoid on a leftover interval and a
    /// power-law head from 0 to the first sample.
    pub fn inner(&self, other: &SampledFunction) -> Result<f64> {
        if self.xs != other.xs {
            return Err(Error::Domain("inner product needs a shared grid".into()));
        }
        let p: Vec<f64> = self.ys.iter().zip(&other.ys).map(|(a, b)| a * b).collect();
        Ok(integrate(&self.xs, &p))
    }

    pub fn norm_sq(&self) -> f64 {
        let p: Vec<f64> = self.ys.iter().map(|y| y * y).collect();
        integrate(&self.xs, &p)
    }

    /// Cubic Lagrange interpolation through the four nearest samples; `None` outside the grid.
    pub fn interpolate(&self, x: f64) -> Option<f64> {
        let n = self.xs.len();
        if n < 4 || !(x >= self.xs[0] && x <= self.xs[n - 1]) {
            return None;
        }
        let i = self.xs.partition_point(|&t| t < x).clamp(2, n - 2) - 2;
        let (xs, ys) = (&self.xs[i..i + 4], &self.ys[i..i + 4]);
        let mut sum = 0.0;
        for j in 0..4 {
            let mut l = 1.0;
            for k in (0..4).filter(|&k| k != j) {
                l *= (x - xs[k]) / (xs[j] - xs[k]);
            }
            sum += l * ys[j];
        }
        Some(sum)
    }

    pub fn scaled(&self, factor: f64) -> SampledFunction {
        SampledFunction {
            xs: self.xs.clone(),
            ys: self.ys.iter().map(|y| y * factor).collect(),
            meta: self.meta.clone(),
        }
    }
}

/// Nonuniform Simpson quadrature of samples `f` on `x`, plus ∫_0^{x0} assuming f ∝ x^{3.5}.
pub(crate) fn integrate(x: &[f64], f: &[f64]) -> f64 {
    let n = x.len();
    if n < 2 {
        return 0.0;
    }
    let mut sum = if x[0] > 0.0 { f[0] * x[0] / 4.5 } else { 0.0 };
    let mut i = 0;
    while i + 2 < n {
        let h0 = x[i + 1] - x[i];
        let h1 = x[i + 2] - x[i + 1];
        let hs = h0 + h1;
        sum += hs / 6.0
            * (f[i] * (2.0 - h1 / h0)
                + f[i + 1] * hs * hs / (h0 * h1)
                + f[i + 2] * (2.0 - h0 / h1));
        i += 2;
    }
    if i + 1 < n {
        sum += 0.5 * (x[i + 1] - x[i]) * (f[i] + f[i + 1]);
    }
    sum
}

fn sign_changes(ys: &[f64], floor: f64) -> usize {
    let mut count = 0;
    let mut last = 0.0f64;
    for &y in ys {
        if y.abs() <= floor {
            continue;
        }
        if last != 0.0 && y.signum() != last.signum() {
            count += 1;
        }
        last = y;
    }
    count
}

/// Strict sign changes, ignoring samples within `NODE_FLOOR` of zero relative to the peak.
pub fn count_nodes(f: &SampledFunction) -> usize {
    sign_changes(&f.ys, NODE_FLOOR * f.peak())
}

/// Node count of `f` on `xs`, confirmed by inserting midpoints.
pub fn count_nodes_refined<F>(f: F, xs: &[f64]) -> Result<usize>
where
    F: Fn(f64) -> Result<f64>,
{
    let coarse: Vec<f64> = xs.iter().map(|&x| f(x)).collect::<Result<_>>()?;
    let mut fine = Vec::with_capacity(2 * coarse.len());
    for (i, &x) in xs.iter().enumerate() {
        fine.push(coarse[i]);
        if i + 1 < xs.len() {
            fine.push(f(0.5 * (x + xs[i + 1]))?);
        }
    }
    let peak = fine.iter().fold(0.0f64, |m, y| m.max(y.abs()));
    let c = sign_changes(&coarse, NODE_FLOOR * peak);
    let r = sign_changes(&fine, NODE_FLOOR * peak);
    if c != r {
        return Err(Error::Resolution { coarse: c, fine: r });
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn meta() -> SampleMeta {
        SampleMeta {
            x_unit: "1".into(),
            normalized: false,
        }
    }

    #[test]
    fn node_examples() {
        let xs: Vec<f64> = (1..=1000).map(|i| 2.0 * PI * i as f64 / 1001.0).collect();
        let c = SampledFunction::new(xs.clone(), vec![1.0; 1000], meta()).unwrap();
        assert_eq!(count_nodes(&c), 0);
        let s =
            SampledFunction::new(xs.clone(), xs.iter().map(|x| x.sin()).collect(), meta()).unwrap();
        assert_eq!(count_nodes(&s), 1);
    }

    #[test]
    fn cubic_interpolation() {
        let xs: Vec<f64> = (0..20).map(|i| (i as f64 * 0.1).powi(2)).collect();
        let f = SampledFunction::new(
            xs.clone(),
            xs.iter().map(|x| x * x * x - x).collect(),
            meta(),
        )
        .unwrap();
        for x in [0.0, 0.013, 0.5, 2.7, xs[19]] {
            assert!((f.interpolate(x).unwrap() - (x * x * x - x)).abs() < 1e-12);
        }
        assert_eq!(f.interpolate(-0.1), None);
        assert_eq!(f.interpolate(4.0), None);
    }

    #[test]
    fn refinement_detects_undersampling() {
        let xs: Vec<f64> = (0..10).map(|i| i as f64 + 0.25).collect();
        let r = count_nodes_refined(|x| Ok((PI * 1.5 * x).sin()), &xs);
        assert!(matches!(r, Err(Error::Resolution { .. })));
        assert_eq!(
            count_nodes_refined(|x| Ok((0.3 * x).sin()), &xs).unwrap(),
            0
        );
    }

    #[test]
    fn quadrature_on_quadratic_grid() {
        let xs: Vec<f64> = (1..=401).map(|i| (i as f64 / 401.0).powi(2) * PI).collect();
        let ys: Vec<f64> = xs.iter().map(|x: &f64| x.sin()).collect();
        let f = SampledFunction::new(xs, ys, meta()).unwrap();
        assert!((f.norm_sq() - PI / 2.0).abs() < 1e-8);
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(SampledFunction::new(vec![1.0, 1.0], vec![0.0, 0.0], meta()).is_err());
        assert!(SampledFunction::new(vec![1.0], vec![0.0, 0.0], meta()).is_err());
    }
}

//! Termination polynomials as exact integer polynomials in (q, δ, ε, α).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub const MAX_ORDER: usize = 6;
const NAMES: [&str; 4] = ["q", "delta", "eps", "alpha"];

/// Sparse polynomial over the integers in (q, δ, ε, α); keys are exponents.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<[u32; 4], BigInt>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, [0, 0, 0, 0])
    }

    pub fn monomial(c: i64, exps: [u32; 4]) -> Self {
        let mut p = Self::zero();
        if c != 0 {
            p.terms.insert(exps, BigInt::from(c));
        }
        p
    }

    pub fn q() -> Self {
        Self::monomial(1, [1, 0, 0, 0])
    }
    pub fn delta() -> Self {
        Self::monomial(1, [0, 1, 0, 0])
    }
    pub fn eps() -> Self {
        Self::monomial(1, [0, 0, 1, 0])
    }
    pub fn alpha() -> Self {
        Self::monomial(1, [0, 0, 0, 1])
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 4], &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert_add(&mut self, e: [u32; 4], c: BigInt) {
        let entry = self.terms.entry(e).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.insert_add(*e, c.clone());
        }
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut r = Self::zero();
        if k != 0 {
            for (e, c) in &self.terms {
                r.terms.insert(*e, c * k);
            }
        }
        r
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut r = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3]];
                r.insert_add(e, c1 * c2);
            }
        }
        r
    }

    pub fn degree_in_q(&self) -> u32 {
        self.terms.keys().map(|e| e[0]).max().unwrap_or(0)
    }

    /// Coefficient of q^k as a polynomial in (δ, ε, α).
    pub fn coeff_q(&self, k: u32) -> Self {
        let mut r = Self::zero();
        for (e, c) in &self.terms {
            if e[0] == k {
                r.terms.insert([0, e[1], e[2], e[3]], c.clone());
            }
        }
        r
    }

    pub fn eval_rational(&self, v: [&BigRational; 4]) -> BigRational {
        let mut sum = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for i in 0..4 {
                for _ in 0..e[i] {
                    t *= v[i];
                }
            }
            sum += t;
        }
        sum
    }

    pub fn eval_f64(&self, v: [f64; 4]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut t = c.to_f64().unwrap_or(f64::NAN);
                for i in 0..4 {
                    t *= v[i].powi(e[i] as i32);
                }
                t
            })
            .sum()
    }

    /// Σ |term| at `v`, the magnitude against which a value is judged small.
    pub fn eval_abs_f64(&self, v: [f64; 4]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut t = c.to_f64().unwrap_or(f64::NAN).abs();
                for i in 0..4 {
                    t *= v[i].abs().powi(e[i] as i32);
                }
                t
            })
            .sum()
    }

    /// Coefficients in q (ascending) at fixed (δ, ε, α).
    pub fn univariate_in_q(&self, delta: f64, eps: f64, alpha: f64) -> Vec<f64> {
        (0..=self.degree_in_q())
            .map(|k| self.coeff_q(k).eval_f64([0.0, delta, eps, alpha]))
            .collect()
    }
}

impl fmt::Display for MultiPoly {
    /// Terms in descending powers of q, then descending total degree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<&[u32; 4]> = self.terms.keys().collect();
        keys.sort_by(|a, b| b.cmp(a));
        for (i, e) in keys.iter().enumerate() {
            let c = &self.terms[*e];
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let vars: Vec<String> = (0..4)
                .filter(|&k| e[k] > 0)
                .map(|k| {
                    if e[k] == 1 {
                        NAMES[k].to_string()
                    } else {
                        format!("{}^{}", NAMES[k], e[k])
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

fn check_order(n: usize) -> Result<()> {
    if n > MAX_ORDER {
        return Err(Error::UnsupportedOrder(n));
    }
    Ok(())
}

/// Determinant of the (N+1)×(N+1) tridiagonal system for c_0..c_N with γ = −N,
/// by the three-term cofactor recurrence
/// D_k = Q_{k−1} D_{k−1} + (k−1)(γ+k−2)((γ+k−1)ε − α) D_{k−2}, Q_n = −q − (γ+n)δ.
/// Equals (−1)^{N+1} times the monic q-polynomial.
pub fn qpoly_determinant(n: usize) -> Result<MultiPoly> {
    check_order(n)?;
    let gamma = -(n as i64);
    let q_n = |i: i64| {
        MultiPoly::q()
            .scale(-1)
            .sub(&MultiPoly::delta().scale(gamma + i))
    };
    let mut d_prev = MultiPoly::constant(1);
    let mut d = q_n(0);
    for k in 2..=(n as i64 + 1) {
        let off = MultiPoly::eps()
            .scale(gamma + k - 1)
            .sub(&MultiPoly::alpha())
            .scale((k - 1) * (gamma + k - 2));
        let next = q_n(k - 1).mul(&d).add(&off.mul(&d_prev));
        d_prev = d;
        d = next;
    }
    Ok(d)
}

/// The same determinant at a rational point, by exact Gaussian elimination on
/// the matrix with diagonal Q_i, superdiagonal (i+1)(α − (γ+i+1)ε) and
/// subdiagonal γ+i, whose off-diagonal products match R_{i+1} P_i.
pub fn qpoly_numeric_determinant(
    n: usize,
    q: &BigRational,
    delta: &BigRational,
    eps: &BigRational,
    alpha: &BigRational,
) -> Result<BigRational> {
    check_order(n)?;
    let size = n + 1;
    let gamma = -(n as i64);
    let int = |v: i64| BigRational::from_integer(BigInt::from(v));
    let mut m = vec![vec![BigRational::zero(); size]; size];
    for i in 0..size {
        let ii = i as i64;
        m[i][i] = -q.clone() - int(gamma + ii) * delta;
        if i + 1 < size {
            m[i][i + 1] = int(ii + 1) * (alpha - int(gamma + ii + 1) * eps);
            m[i + 1][i] = int(gamma + ii);
        }
    }
    let mut det = BigRational::one();
    for col in 0..size {
        let Some(p) = (col..size).find(|&r| !m[r][col].is_zero()) else {
            return Ok(BigRational::zero());
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det *= &pivot;
        for r in col + 1..size {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &pivot;
            let (upper, lower) = m.split_at_mut(r);
            for (dst, src) in lower[0][col..].iter_mut().zip(&upper[col][col..]) {
                *dst -= &factor * src;
            }
        }
    }
    Ok(det)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_orders() {
        assert_eq!(qpoly_determinant(0).unwrap().to_string(), "-q");
        assert_eq!(
            qpoly_determinant(1).unwrap().to_string(),
            "q^2 - q*delta + alpha"
        );
    }

    #[test]
    fn matches_gaussian_elimination() {
        let r = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
        let (q, d, e, a) = (r(3, 7), r(-5, 2), r(-11, 3), r(13, 5));
        for n in 0..=MAX_ORDER {
            let sym = qpoly_determinant(n)
                .unwrap()
                .eval_rational([&q, &d, &e, &a]);
            let num = qpoly_numeric_determinant(n, &q, &d, &e, &a).unwrap();
            assert_eq!(sym, num, "N = {n}");
        }
    }

    #[test]
    fn order_bound() {
        assert_eq!(qpoly_determinant(7), Err(Error::UnsupportedOrder(7)));
    }
}

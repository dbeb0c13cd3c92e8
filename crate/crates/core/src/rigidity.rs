//! Fixed points of `tan t = t` and the exact polynomial certificate that two
//! multiples `γm`, `γn` cannot both be fixed points.
//!
//! The multiple-angle polynomials satisfy `tan(nx) = p_n(tan x) / q_n(tan x)`
//! with `p_1 = x`, `q_1 = 1`, `p_{n+1} = p_n + x q_n` and
//! `q_{n+1} = q_n − x p_n`. A common solution would make `tan γ` a root of
//! `R_{m,n} = n q_n p_m − m q_m p_n`. That polynomial is checked to be nonzero
//! in exact integer arithmetic; its lowest term is
//! `mn(m² − n²)/3 · x³`, the `x³` Taylor coefficient of
//! `n tan(mx) − m tan(nx)`.
//!
//! The transcendence step that turns this into a proof has no finite
//! analogue; what is offered here are residual scans and bounded-height
//! rational checks.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense polynomial with exact integer coefficients, `coeffs[i]` multiplying
/// `x^i`. The highest stored coefficient is nonzero; the zero polynomial has
/// no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coefficient(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn nonzero_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn lowest_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Only odd powers carry nonzero coefficients.
    pub fn is_odd(&self) -> bool {
        self.coeffs.iter().step_by(2).all(Zero::is_zero)
    }

    /// Only even powers carry nonzero coefficients.
    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(Zero::is_zero)
    }

    pub fn shift(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = Vec::with_capacity(self.coeffs.len() + 1);
        c.push(BigInt::zero());
        c.extend(self.coeffs.iter().cloned());
        Self { coeffs: c }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Horner evaluation in `f64`.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Exact evaluation at an integer.
    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coefficient(i) + rhs.coefficient(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coefficient(i) - rhs.coefficient(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{mag}x^{i}")?,
            }
        }
        Ok(())
    }
}

/// `(p_n, q_n)` with `tan(nx) = p_n(tan x) / q_n(tan x)`.
pub fn tangent_poly_pair(n: u32) -> Result<(IntPolynomial, IntPolynomial)> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let x = IntPolynomial::x();
    let mut p = IntPolynomial::x();
    let mut q = IntPolynomial::one();
    for _ in 1..n {
        let np = &p + &(&x * &q);
        let nq = &q - &(&x * &p);
        p = np;
        q = nq;
    }
    Ok((p, q))
}

/// `R_{m,n} = n q_n p_m − m q_m p_n`.
pub fn combined_poly(m: u32, n: u32) -> Result<IntPolynomial> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidParameter("m and n must be positive".into()));
    }
    if m == n {
        return Err(Error::Degenerate(format!(
            "R_{{{m},{n}}} vanishes identically when m = n"
        )));
    }
    let (pm, qm) = tangent_poly_pair(m)?;
    let (pn, qn) = tangent_poly_pair(n)?;
    let left = (&qn * &pm).scale(&BigInt::from(n));
    let right = (&qm * &pn).scale(&BigInt::from(m));
    Ok(&left - &right)
}

/// `nm³ − mn³`.
pub fn third_order_constant(m: u32, n: u32) -> BigInt {
    let (m, n) = (BigInt::from(m), BigInt::from(n));
    &n * &m * &m * &m - &m * &n * &n * &n
}

/// Exact findings behind [`nonvanishing_certificate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub m: u32,
    pub n: u32,
    pub poly: IntPolynomial,
    /// `nm³ − mn³`.
    pub third_order: BigInt,
    /// `R_{m,n}` has no constant, linear or quadratic term and its `x³`
    /// coefficient equals `(nm³ − mn³)/3`.
    pub taylor_agrees: bool,
}

impl Certificate {
    pub fn nonzero(&self) -> bool {
        !self.poly.is_zero()
    }
}

/// Builds `R_{m,n}` and checks it against the Taylor expansion of
/// `n tan(mx) − m tan(nx)` at 0.
pub fn certificate(m: u32, n: u32) -> Result<Certificate> {
    let poly = combined_poly(m, n)?;
    let third_order = third_order_constant(m, n);
    let three = BigInt::from(3);
    let taylor_agrees = (&third_order % &three).is_zero()
        && !third_order.is_zero()
        && poly.lowest_degree() == Some(3)
        && poly.coefficient(3) == &third_order / &three;
    Ok(Certificate {
        m,
        n,
        poly,
        third_order,
        taylor_agrees,
    })
}

/// `R_{m,n}` has a nonzero coefficient and its lowest-order term matches the
/// nonvanishing `nm³ − mn³` behaviour near 0. Exact, no tolerance.
pub fn nonvanishing_certificate(m: u32, n: u32) -> Result<bool> {
    let c = certificate(m, n)?;
    Ok(c.nonzero() && c.taylor_agrees)
}

/// The `index`-th positive solution of `tan t = t`.
///
/// `value` is the nearest double; `correction` is a low-order term with
/// `value + correction` closer to the root than one ulp, since near `t ≈ mπ`
/// the residual `tan t − t` amplifies a one-ulp error by `t²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TanFixedPoint {
    pub index: u32,
    pub value: f64,
    pub correction: f64,
    /// `|tan γ − γ|` at `value + correction`, evaluated through
    /// `(sin γ − γ cos γ) / cos γ` to first order in `correction`.
    pub residual: f64,
}

/// `(sin t − t cos t) / cos t` at `t + dt`, to first order in `dt`.
fn tan_residual(t: f64, dt: f64) -> f64 {
    let (s, c) = t.sin_cos();
    let h = s - t * c + dt * t * s;
    let cos = c - dt * s;
    h / cos
}

/// Bisection on `(mπ, (m + ½)π)` followed by Newton polishing.
pub fn tan_fixed_point(m: u32) -> Result<TanFixedPoint> {
    if m == 0 {
        return Err(Error::InvalidParameter("fixed point index starts at 1".into()));
    }
    let mf = m as f64;
    let mut lo = mf * PI;
    let mut hi = (mf + 0.5) * PI * (1.0 - 1e-15);
    let g = |t: f64| t.tan() - t;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut t = 0.5 * (lo + hi);
    for _ in 0..50 {
        let tn = t.tan();
        let step = (tn - t) / (tn * tn);
        let next = t - step;
        if !(next > mf * PI && next < (mf + 0.5) * PI) {
            break;
        }
        t = next;
        if step.abs() < 1e-14 {
            break;
        }
    }
    let tn = t.tan();
    let correction = -(tn - t) / (tn * tn);
    let residual = tan_residual(t, correction).abs();
    Ok(TanFixedPoint {
        index: m,
        value: t,
        correction,
        residual,
    })
}

/// Fixed points `1..=m_max`.
pub fn tan_fixed_points(m_max: u32) -> Result<Vec<TanFixedPoint>> {
    (1..=m_max).map(tan_fixed_point).collect()
}

/// Pole exclusion radius used by [`simultaneous_residual_scan`].
pub const POLE_EPS: f64 = 1e-6;

fn near_pole(t: f64) -> bool {
    let j = (t / PI - 0.5).round();
    (t - (j + 0.5) * PI).abs() < POLE_EPS
}

/// `min_γ max(|tan γm − γm|, |tan γn − γn|)` over `grid` equispaced radii in
/// `[π / min(m, n), gamma_max]`, skipping `POLE_EPS`-neighbourhoods of the
/// poles of either tangent. Below `π / min(m, n)` at least one of `γm`,
/// `γn` is smaller than the first positive fixed point, so no common
/// solution can live there; the scan starts above the trivial root `γ = 0`.
pub fn simultaneous_residual_scan(m: u32, n: u32, gamma_max: f64, grid: usize) -> Result<f64> {
    if m == n || m == 0 || n == 0 {
        return Err(Error::InvalidParameter("need distinct positive m and n".into()));
    }
    let lo = PI / m.min(n) as f64;
    if !(gamma_max > lo) || grid < 2 {
        return Err(Error::InvalidParameter(format!(
            "need gamma_max > {lo} and grid >= 2"
        )));
    }
    let (mf, nf) = (m as f64, n as f64);
    let step = (gamma_max - lo) / (grid - 1) as f64;
    let best = (0..grid)
        .into_par_iter()
        .filter_map(|i| {
            let g = lo + step * i as f64;
            let (a, b) = (g * mf, g * nf);
            if near_pole(a) || near_pole(b) {
                return None;
            }
            Some((a.tan() - a).abs().max((b.tan() - b).abs()))
        })
        .reduce(|| f64::INFINITY, f64::min);
    Ok(best)
}

/// `true` iff `|t q − p π| > 1e-9` for every `1 ≤ q ≤ max_q` and integer `p`
/// (only the nearest `p` for each `q` can come close).
pub fn rational_pi_independence(t: f64, max_q: u32) -> bool {
    (1..=max_q).all(|q| {
        let tq = t * q as f64;
        let p = (tq / PI).round();
        [p - 1.0, p, p + 1.0]
            .iter()
            .all(|&p| (tq - p * PI).abs() > 1e-9)
    })
}

/// [`rational_pi_independence`] applied to the `m`-th fixed point.
pub fn rational_pi_independence_check(m: u32, max_q: u32) -> Result<bool> {
    let fp = tan_fixed_point(m)?;
    Ok(rational_pi_independence(fp.value, max_q))
}

/// Serialized certificate summary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub m: u32,
    pub n: u32,
    pub degree: Option<usize>,
    pub nonzero_coeff_count: usize,
    pub min_scan_residual: f64,
}

pub fn certificate_report(m: u32, n: u32, gamma_max: f64, grid: usize) -> Result<CertificateReport> {
    let poly = combined_poly(m, n)?;
    Ok(CertificateReport {
        m,
        n,
        degree: poly.degree(),
        nonzero_coeff_count: poly.nonzero_count(),
        min_scan_residual: simultaneous_residual_scan(m, n, gamma_max, grid)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_tangent_polynomials() {
        let (p1, q1) = tangent_poly_pair(1).unwrap();
        assert_eq!(p1, IntPolynomial::x());
        assert_eq!(q1, IntPolynomial::one());
        let (p2, q2) = tangent_poly_pair(2).unwrap();
        assert_eq!(p2, IntPolynomial::from_i64(&[0, 2]));
        assert_eq!(q2, IntPolynomial::from_i64(&[1, 0, -1]));
        let (p3, q3) = tangent_poly_pair(3).unwrap();
        assert_eq!(p3, IntPolynomial::from_i64(&[0, 3, 0, -1]));
        assert_eq!(q3, IntPolynomial::from_i64(&[1, 0, -3]));
        assert!(tangent_poly_pair(0).is_err());
    }

    #[test]
    fn combined_polynomial_examples() {
        assert_eq!(combined_poly(1, 2).unwrap(), IntPolynomial::from_i64(&[0, 0, 0, -2]));
        // 3(1 - 3x²)x - (3x - x³) = -8x³
        assert_eq!(combined_poly(1, 3).unwrap(), IntPolynomial::from_i64(&[0, 0, 0, -8]));
        assert!(matches!(combined_poly(2, 2), Err(Error::Degenerate(_))));
    }

    #[test]
    fn certificate_examples() {
        assert!(nonvanishing_certificate(1, 2).unwrap());
        assert_eq!(third_order_constant(1, 2), BigInt::from(-6));
        let c = certificate(2, 5).unwrap();
        assert!(c.taylor_agrees);
        assert_eq!(c.poly.coefficient(3), BigInt::from(2 * 5 * (4 - 25)) / 3);
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(IntPolynomial::from_i64(&[1, 0, -3]).to_string(), "-3x^2 + 1");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
        assert_eq!(IntPolynomial::from_i64(&[0, -1]).to_string(), "-x");
    }

    #[test]
    fn polynomial_arithmetic() {
        let a = IntPolynomial::from_i64(&[1, 2]);
        let b = IntPolynomial::from_i64(&[-1, 2]);
        assert_eq!(&a * &b, IntPolynomial::from_i64(&[-1, 0, 4]));
        assert_eq!(&a - &a, IntPolynomial::zero());
        assert_eq!((&a - &a).degree(), None);
        assert_eq!((&a + &b).degree(), Some(1));
        assert_eq!(a.eval_int(&BigInt::from(3)), BigInt::from(7));
        assert_eq!(-&a, IntPolynomial::from_i64(&[-1, -2]));
    }

    #[test]
    fn fixed_points_examples() {
        let g1 = tan_fixed_point(1).unwrap();
        assert!((g1.value - 4.493_409_457_909).abs() < 1e-11);
        let g2 = tan_fixed_point(2).unwrap();
        assert!((g2.value - 7.725_251_836_938).abs() < 1e-11);
        assert!(tan_fixed_point(0).is_err());
        let g20 = tan_fixed_point(20).unwrap();
        assert!((g20.value - 20.5 * PI).abs() < 0.05 * PI);
    }

    #[test]
    fn fixed_point_residuals_stay_small() {
        for fp in tan_fixed_points(50).unwrap() {
            let m = fp.index as f64;
            assert!(fp.residual <= 1e-12, "m={} residual {}", fp.index, fp.residual);
            assert!(fp.value > m * PI && fp.value < (m + 0.5) * PI);
        }
    }

    #[test]
    fn scans_stay_away_from_zero() {
        assert!(simultaneous_residual_scan(1, 2, 50.0, 200_000).unwrap() > 0.01);
        assert!(simultaneous_residual_scan(2, 3, 50.0, 200_000).unwrap() > 0.0);
        assert!(simultaneous_residual_scan(1, 1, 50.0, 10).is_err());
    }

    #[test]
    fn rational_multiples_of_pi() {
        assert!(rational_pi_independence_check(1, 100).unwrap());
        assert!(rational_pi_independence_check(2, 100).unwrap());
        assert!(!rational_pi_independence(PI / 4.0, 4));
    }
}

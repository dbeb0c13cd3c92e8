//! Periodic real functions on ℝ.
//!
//! All three representations share [`FunctionHandle::evaluate`] and
//! [`FunctionHandle::period`]. Fourier series are finite; the default period
//! is `2π`, and other periods rescale every mode's angular frequency to
//! `2πk / period`.

use std::f64::consts::TAU;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One Fourier mode `a sin(ωx) + b cos(ωx)` with `ω = 2πk / period`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mode {
    pub k: u32,
    pub a: f64,
    pub b: f64,
}

impl Mode {
    pub fn new(k: u32, a: f64, b: f64) -> Self {
        Self { k, a, b }
    }

    pub fn amplitude(&self) -> f64 {
        self.a.hypot(self.b)
    }

    fn is_zero(&self) -> bool {
        self.a == 0.0 && self.b == 0.0
    }
}

#[derive(Deserialize)]
struct FourierRepr {
    #[serde(default)]
    mean: f64,
    #[serde(default)]
    coeffs: Vec<Mode>,
    #[serde(default = "default_period")]
    period: f64,
}

fn default_period() -> f64 {
    TAU
}

/// Finite trigonometric polynomial `mean + Σ a_k sin(ω_k x) + b_k cos(ω_k x)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FourierRepr")]
pub struct FourierSeries {
    mean: f64,
    coeffs: Vec<Mode>,
    period: f64,
}

impl TryFrom<FourierRepr> for FourierSeries {
    type Error = Error;

    fn try_from(r: FourierRepr) -> Result<Self> {
        FourierSeries::with_period(r.mean, r.coeffs, r.period)
    }
}

impl FourierSeries {
    /// Series with the default period `2π`.
    pub fn new(mean: f64, coeffs: Vec<Mode>) -> Result<Self> {
        Self::with_period(mean, coeffs, TAU)
    }

    pub fn with_period(mean: f64, coeffs: Vec<Mode>, period: f64) -> Result<Self> {
        if !(period > 0.0 && period.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "period must be positive and finite, got {period}"
            )));
        }
        if !mean.is_finite() {
            return Err(Error::InvalidParameter("mean must be finite".into()));
        }
        for (i, m) in coeffs.iter().enumerate() {
            if m.k == 0 {
                return Err(Error::InvalidParameter("mode index k must be positive".into()));
            }
            if !(m.a.is_finite() && m.b.is_finite()) {
                return Err(Error::InvalidParameter(format!("mode k={} is not finite", m.k)));
            }
            if i > 0 && coeffs[i - 1].k >= m.k {
                return Err(Error::InvalidParameter(
                    "mode indices must be distinct and strictly increasing".into(),
                ));
            }
        }
        Ok(Self {
            mean,
            coeffs,
            period,
        })
    }

    pub fn constant(mean: f64) -> Self {
        Self {
            mean,
            coeffs: Vec::new(),
            period: TAU,
        }
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn coeffs(&self) -> &[Mode] {
        &self.coeffs
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    /// Angular frequency of mode index `k`.
    pub fn omega(&self, k: u32) -> f64 {
        TAU * k as f64 / self.period
    }

    pub fn evaluate(&self, x: f64) -> f64 {
        self.mean
            + self
                .coeffs
                .iter()
                .map(|m| {
                    let (s, c) = (self.omega(m.k) * x).sin_cos();
                    m.a * s + m.b * c
                })
                .sum::<f64>()
    }

    pub fn derivative(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .map(|m| {
                let w = self.omega(m.k);
                let (s, c) = (w * x).sin_cos();
                w * (m.a * c - m.b * s)
            })
            .sum()
    }

    /// Upper bound `|mean| + Σ amplitude` on the sup norm.
    pub fn sup_bound(&self) -> f64 {
        self.mean.abs() + self.coeffs.iter().map(Mode::amplitude).sum::<f64>()
    }

    pub fn negated(&self) -> Self {
        Self {
            mean: -self.mean,
            coeffs: self
                .coeffs
                .iter()
                .map(|m| Mode::new(m.k, -m.a, -m.b))
                .collect(),
            period: self.period,
        }
    }

    /// `x ↦ f(x + s)`.
    pub fn shifted(&self, s: f64) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|m| {
                let (ss, cs) = (self.omega(m.k) * s).sin_cos();
                Mode::new(m.k, m.a * cs - m.b * ss, m.a * ss + m.b * cs)
            })
            .collect();
        Self {
            mean: self.mean,
            coeffs,
            period: self.period,
        }
    }

    /// `x ↦ f(cx)` for `c > 0`.
    pub fn dilated(&self, c: f64) -> Result<Self> {
        if !(c > 0.0) {
            return Err(Error::InvalidParameter(format!("dilation must be positive, got {c}")));
        }
        Self::with_period(self.mean, self.coeffs.clone(), self.period / c)
    }

    fn nonzero_modes(&self) -> impl Iterator<Item = &Mode> {
        self.coeffs.iter().filter(|m| !m.is_zero())
    }

    /// Phase-amplitude form of a single-mode series.
    ///
    /// A series with no nonzero mode maps to `b = 0` at the fundamental
    /// frequency.
    pub fn to_sine_params(&self) -> Result<SineParams> {
        let active: Vec<&Mode> = self.nonzero_modes().collect();
        match active.as_slice() {
            [] => SineParams::new(self.mean, 0.0, TAU / self.period, 0.0),
            [m] => SineParams::new(self.mean, m.amplitude(), self.omega(m.k), m.b.atan2(m.a)),
            _ => Err(Error::MultiMode(active.len())),
        }
    }
}

/// The four-parameter family `a + b sin(cx + d)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SineParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl SineParams {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        if c == 0.0 || !c.is_finite() {
            return Err(Error::InvalidParameter(format!("frequency must be nonzero, got {c}")));
        }
        if !(a.is_finite() && b.is_finite() && d.is_finite()) {
            return Err(Error::InvalidParameter("sine parameters must be finite".into()));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn evaluate(&self, x: f64) -> f64 {
        self.a + self.b * (self.c * x + self.d).sin()
    }

    pub fn derivative(&self, x: f64) -> f64 {
        self.b * self.c * (self.c * x + self.d).cos()
    }

    pub fn period(&self) -> f64 {
        TAU / self.c.abs()
    }

    pub fn negated(&self) -> Self {
        Self {
            b: -self.b,
            ..*self
        }
    }

    /// Equivalent Fourier series: period `2π` with mode `k = c` when `c` is a
    /// positive integer, otherwise period `2π/|c|` with a single mode `k = 1`.
    pub fn to_fourier(&self) -> FourierSeries {
        // sin(-|c|x + d) = sin(|c|x + π - d)
        let (c, d) = if self.c < 0.0 {
            (-self.c, std::f64::consts::PI - self.d)
        } else {
            (self.c, self.d)
        };
        let (sd, cd) = d.sin_cos();
        let integer = c.fract() == 0.0 && c <= u32::MAX as f64;
        let (k, period) = if integer { (c as u32, TAU) } else { (1, TAU / c) };
        FourierSeries {
            mean: self.a,
            coeffs: vec![Mode::new(k, self.b * cd, self.b * sd)],
            period,
        }
    }
}

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// An opaque periodic callable with a declared period and optional
/// analytic derivative.
#[derive(Clone)]
pub struct BlackBox {
    f: RealFn,
    df: Option<RealFn>,
    period: f64,
    label: String,
}

impl BlackBox {
    pub fn new<F>(label: impl Into<String>, period: f64, f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            f: Arc::new(f),
            df: None,
            period,
            label: label.into(),
        }
    }

    pub fn with_derivative<D>(mut self, df: D) -> Self
    where
        D: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        self.df = Some(Arc::new(df));
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn evaluate(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    /// Analytic derivative when supplied, else a central difference with
    /// step `1e-6`.
    pub fn derivative(&self, x: f64) -> f64 {
        match &self.df {
            Some(df) => df(x),
            None => {
                let h = 1e-6;
                ((self.f)(x + h) - (self.f)(x - h)) / (2.0 * h)
            }
        }
    }

    pub fn has_derivative(&self) -> bool {
        self.df.is_some()
    }

    pub fn negated(&self) -> Self {
        let f = self.f.clone();
        let df = self.df.clone();
        Self {
            f: Arc::new(move |x| -f(x)),
            df: df.map(|d| Arc::new(move |x: f64| -d(x)) as RealFn),
            period: self.period,
            label: format!("-({})", self.label),
        }
    }
}

impl fmt::Debug for BlackBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BlackBox")
            .field("label", &self.label)
            .field("period", &self.period)
            .field("has_derivative", &self.df.is_some())
            .finish()
    }
}

/// Any of the supported periodic function models.
///
/// JSON form is tagged by `kind`:
/// `{"kind": "fourier", "mean": 0, "coeffs": [{"k": 1, "a": 1, "b": 0}], "period": 6.283…}`
/// or `{"kind": "sine", "a": 0, "b": 1, "c": 1, "d": 0}`. Black-box callables
/// have no JSON form.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FunctionHandle {
    Fourier(FourierSeries),
    Sine(SineParams),
    #[serde(skip)]
    BlackBox(BlackBox),
}

impl FunctionHandle {
    pub fn black_box<F>(label: impl Into<String>, period: f64, f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self::BlackBox(BlackBox::new(label, period, f))
    }

    pub fn evaluate(&self, x: f64) -> f64 {
        match self {
            Self::Fourier(s) => s.evaluate(x),
            Self::Sine(p) => p.evaluate(x),
            Self::BlackBox(b) => b.evaluate(x),
        }
    }

    pub fn derivative(&self, x: f64) -> f64 {
        match self {
            Self::Fourier(s) => s.derivative(x),
            Self::Sine(p) => p.derivative(x),
            Self::BlackBox(b) => b.derivative(x),
        }
    }

    pub fn period(&self) -> f64 {
        match self {
            Self::Fourier(s) => s.period(),
            Self::Sine(p) => p.period(),
            Self::BlackBox(b) => b.period,
        }
    }

    /// The mean over a period when it is known in closed form.
    pub fn known_mean(&self) -> Option<f64> {
        match self {
            Self::Fourier(s) => Some(s.mean()),
            Self::Sine(p) => Some(p.a),
            Self::BlackBox(_) => None,
        }
    }

    pub fn negated(&self) -> Self {
        match self {
            Self::Fourier(s) => Self::Fourier(s.negated()),
            Self::Sine(p) => Self::Sine(p.negated()),
            Self::BlackBox(b) => Self::BlackBox(b.negated()),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Self::Fourier(s) => {
                let mut out = format!("{}", s.mean());
                for m in s.coeffs() {
                    out.push_str(&format!(" + {}·sin({}x) + {}·cos({}x)", m.a, m.k, m.b, m.k));
                }
                out
            }
            Self::Sine(p) => format!("{} + {}·sin({}x + {})", p.a, p.b, p.c, p.d),
            Self::BlackBox(b) => b.label.clone(),
        }
    }
}

impl From<FourierSeries> for FunctionHandle {
    fn from(s: FourierSeries) -> Self {
        Self::Fourier(s)
    }
}

impl From<SineParams> for FunctionHandle {
    fn from(p: SineParams) -> Self {
        Self::Sine(p)
    }
}

impl From<BlackBox> for FunctionHandle {
    fn from(b: BlackBox) -> Self {
        Self::BlackBox(b)
    }
}

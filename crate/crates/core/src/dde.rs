//! The delay differential equation
//! `f'(x+γ) − f(x+γ)/γ = −f'(x−γ) − f(x−γ)/γ` satisfied by any periodic
//! function whose averages are all critical at `r = γ`.
//!
//! Solutions are determined by arbitrary `C¹` data on a window of length
//! `2γ`; [`DdeSolution::extend`] continues such data forward by the method of
//! steps, which is how the large non-periodic solution space shows up.

use rayon::prelude::*;
use serde::Serialize;

use crate::averaging::{average, AveragingConfig};
use crate::error::{Error, Result};
use crate::maximal::{fmt_num, golden_min};
use crate::periodic::FunctionHandle;

/// `LHS − RHS` of the equation at `x`, using the handle's derivative
/// (analytic for series and sines, central differences for black boxes).
pub fn dde_residual(f: &FunctionHandle, gamma: f64, x: f64) -> Result<f64> {
    if !(gamma > 0.0) {
        return Err(Error::NonPositiveRadius(gamma));
    }
    let (a, b) = (x + gamma, x - gamma);
    Ok(f.derivative(a) - f.evaluate(a) / gamma + f.derivative(b) + f.evaluate(b) / gamma)
}

/// `f(x+γ) + f(x−γ) − (1/γ) ∫_{x−γ}^{x+γ} f`, the once-integrated equation
/// with zero constant. The integral is `2γ` times the interval average, so
/// the result equals `2γ ∂_r (A_x f)(γ)`.
pub fn integrated_identity_residual(
    f: &FunctionHandle,
    gamma: f64,
    x: f64,
    cfg: &AveragingConfig,
) -> Result<f64> {
    let avg = average(f, x, gamma, cfg)?;
    Ok(f.evaluate(x + gamma) + f.evaluate(x - gamma) - 2.0 * avg)
}

/// Samples of a solution on the uniform grid `t_i = t0 + i h`, with
/// `h = 2γ / n_window`. The first `n_window + 1` samples are the initial
/// data; everything after was produced by [`DdeSolution::extend`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DdeSolution {
    gamma: f64,
    t0: f64,
    h: f64,
    n_window: usize,
    values: Vec<f64>,
    derivs: Vec<f64>,
    history_len: usize,
    edge_residual: f64,
}

impl DdeSolution {
    /// Initial data on `[t0, t0 + 2γ]`: `values.len() − 1` cells.
    ///
    /// The data are not required to satisfy the equation at the window
    /// edges; the mismatch `|f'(t0+2γ) − f(t0+2γ)/γ + f'(t0) + f(t0)/γ|` is
    /// reported by [`edge_residual`](Self::edge_residual).
    pub fn from_history(gamma: f64, t0: f64, values: Vec<f64>, derivs: Vec<f64>) -> Result<Self> {
        if !(gamma > 0.0) {
            return Err(Error::NonPositiveRadius(gamma));
        }
        if values.len() != derivs.len() {
            return Err(Error::InvalidParameter(format!(
                "{} values but {} derivatives",
                values.len(),
                derivs.len()
            )));
        }
        if values.len() < 3 {
            return Err(Error::InsufficientHistory {
                got: values.len(),
                need: 3,
            });
        }
        let n = values.len() - 1;
        let edge_residual =
            (derivs[n] - values[n] / gamma + derivs[0] + values[0] / gamma).abs();
        Ok(Self {
            gamma,
            t0,
            h: 2.0 * gamma / n as f64,
            n_window: n,
            history_len: n + 1,
            values,
            derivs,
            edge_residual,
        })
    }

    /// Restriction of `f` to `[t0, t0 + 2γ]` on `n_window` cells.
    pub fn from_function(f: &FunctionHandle, gamma: f64, t0: f64, n_window: usize) -> Result<Self> {
        Self::from_fn(|t| f.evaluate(t), |t| f.derivative(t), gamma, t0, n_window)
    }

    pub fn from_fn<F, D>(f: F, df: D, gamma: f64, t0: f64, n_window: usize) -> Result<Self>
    where
        F: Fn(f64) -> f64,
        D: Fn(f64) -> f64,
    {
        if !(gamma > 0.0) {
            return Err(Error::NonPositiveRadius(gamma));
        }
        let h = 2.0 * gamma / n_window.max(1) as f64;
        let ts: Vec<f64> = (0..=n_window).map(|i| t0 + i as f64 * h).collect();
        Self::from_history(
            gamma,
            t0,
            ts.iter().map(|&t| f(t)).collect(),
            ts.iter().map(|&t| df(t)).collect(),
        )
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn n_window(&self) -> usize {
        self.n_window
    }

    pub fn history_len(&self) -> usize {
        self.history_len
    }

    pub fn edge_residual(&self) -> f64 {
        self.edge_residual
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn derivs(&self) -> &[f64] {
        &self.derivs
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn t(&self, i: usize) -> f64 {
        self.t0 + i as f64 * self.h
    }

    pub fn t_end(&self) -> f64 {
        self.t(self.len() - 1)
    }

    /// Length of the sampled interval.
    pub fn span(&self) -> f64 {
        self.t_end() - self.t0
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Appends `steps` samples. At each new node the equation gives
    /// `f'(t) = f(t)/γ − H` with `H = f'(t−2γ) + f(t−2γ)/γ` from the stored
    /// lookback, and the trapezoid rule
    /// `f(t) = f(t−h) + (h/2)(f'(t−h) + f'(t))` is solved for `f(t)` in
    /// closed form.
    pub fn extend(&self, steps: usize) -> Result<Self> {
        let need = self.n_window + 1;
        if self.values.len() < need || self.derivs.len() < need {
            return Err(Error::InsufficientHistory {
                got: self.values.len().min(self.derivs.len()),
                need,
            });
        }
        let mut out = self.clone();
        out.values.reserve(steps);
        out.derivs.reserve(steps);
        let (g, h, n) = (self.gamma, self.h, self.n_window);
        let denom = 1.0 - h / (2.0 * g);
        for _ in 0..steps {
            let i = out.values.len();
            let lag = out.derivs[i - n] + out.values[i - n] / g;
            let v = (out.values[i - 1] + 0.5 * h * (out.derivs[i - 1] - lag)) / denom;
            out.values.push(v);
            out.derivs.push(v / g - lag);
        }
        Ok(out)
    }

    /// Cubic Hermite interpolation from the stored values and derivatives.
    /// `t` is clamped into the sampled range.
    pub fn value_at(&self, t: f64) -> f64 {
        let last = self.len() - 1;
        let u = ((t - self.t0) / self.h).clamp(0.0, last as f64);
        let i = (u.floor() as usize).min(last.saturating_sub(1));
        let s = u - i as f64;
        let (y0, y1) = (self.values[i], self.values[i + 1]);
        let (d0, d1) = (self.derivs[i] * self.h, self.derivs[i + 1] * self.h);
        let s2 = s * s;
        let s3 = s2 * s;
        (2.0 * s3 - 3.0 * s2 + 1.0) * y0
            + (s3 - 2.0 * s2 + s) * d0
            + (-2.0 * s3 + 3.0 * s2) * y1
            + (s3 - s2) * d1
    }

    /// Equation residual at every grid node that has a full lookback, with
    /// both derivatives replaced by central differences of the stored
    /// values. Small residuals certify that values and derivatives are
    /// mutually consistent, not merely that the update rule was applied.
    pub fn grid_residuals(&self) -> Vec<(f64, f64)> {
        let (g, h, n) = (self.gamma, self.h, self.n_window);
        let v = &self.values;
        let d = |j: usize| (v[j + 1] - v[j - 1]) / (2.0 * h);
        ((n + 1)..self.len().saturating_sub(1))
            .into_par_iter()
            .map(|i| {
                let res = d(i) - v[i] / g + d(i - n) + v[i - n] / g;
                (self.t(i), res)
            })
            .collect()
    }

    pub fn max_grid_residual(&self) -> f64 {
        self.grid_residuals()
            .iter()
            .fold(0.0, |m, &(_, r)| m.max(r.abs()))
    }

    /// `c(x) = f(x+γ) + f(x−γ) − (1/γ) ∫_{x−γ}^{x+γ} f` at every node where
    /// the window fits, with the integral by the trapezoid rule with
    /// endpoint derivative correction. Any solution keeps `c` constant;
    /// periodic solutions force `c = 0`.
    pub fn integrated_constant_trace(&self) -> Vec<(f64, f64)> {
        let (g, h, n) = (self.gamma, self.h, self.n_window);
        let mut cum = Vec::with_capacity(self.len());
        cum.push(0.0);
        for j in 1..self.len() {
            let cell = 0.5 * h * (self.values[j - 1] + self.values[j])
                + h * h / 12.0 * (self.derivs[j - 1] - self.derivs[j]);
            cum.push(cum[j - 1] + cell);
        }
        let half = n / 2;
        if n % 2 != 0 {
            return Vec::new();
        }
        (half..self.len().saturating_sub(half))
            .map(|i| {
                let integral = cum[i + half] - cum[i - half];
                let c = self.values[i + half] + self.values[i - half] - integral / g;
                (self.t(i), c)
            })
            .collect()
    }

    /// Writes `t,f,f'` rows.
    pub fn write_csv<W: std::io::Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        wr.write_record(["t", "f", "f'"])?;
        for i in 0..self.len() {
            wr.write_record([
                fmt_num(self.t(i)),
                fmt_num(self.values[i]),
                fmt_num(self.derivs[i]),
            ])?;
        }
        wr.flush()?;
        Ok(())
    }
}

/// Free-function form of [`DdeSolution::extend`].
pub fn extend_solution(initial: &DdeSolution, steps: usize) -> Result<DdeSolution> {
    initial.extend(steps)
}

/// Extends the restriction of an exact solution `f` to `[t0, t0 + 2γ]` by
/// `steps` samples and returns the largest deviation from `f` on the
/// extended part.
pub fn extension_error(f: &FunctionHandle, gamma: f64, t0: f64, n_window: usize, steps: usize) -> Result<f64> {
    let ext = DdeSolution::from_function(f, gamma, t0, n_window)?.extend(steps)?;
    Ok((ext.history_len()..ext.len())
        .map(|i| (ext.values()[i] - f.evaluate(ext.t(i))).abs())
        .fold(0.0, f64::max))
}

/// Number of coarse shifts tried by [`periodicity_score`].
const SHIFT_GRID: usize = 1024;
/// At most this many comparison points per shift.
const MAX_COMPARE: usize = 4096;

/// `min_s ‖f(·) − f(·+s)‖∞ / ‖f‖∞` over shifts `s ∈ (h, window]`, the sup
/// taken over `t ∈ [t0, t_end − window]`.
///
/// For tiny shifts the mismatch is about `s ‖f'‖∞`, which says nothing about
/// periodicity, so the minimum is taken only past the first local maximum of
/// the mismatch curve. A curve that never turns down is scored by its value
/// at `s = window`. The coarse minimum is refined by golden section with
/// Hermite interpolation between nodes.
pub fn periodicity_score(sol: &DdeSolution, window: f64) -> Result<f64> {
    if !(window > sol.h) {
        return Err(Error::InvalidParameter(format!(
            "window {window} must exceed the grid step {}",
            sol.h
        )));
    }
    if sol.span() < 2.0 * window - 1e-9 * window {
        return Err(Error::Precondition(format!(
            "sampled span {} shorter than twice the window {window}",
            sol.span()
        )));
    }
    let norm = sol.sup_norm();
    if norm < 1e-300 {
        return Ok(0.0);
    }
    let last = ((sol.span() - window) / sol.h).floor() as usize;
    let stride = (last / MAX_COMPARE).max(1);
    let nodes: Vec<usize> = (0..=last).step_by(stride).collect();
    let mismatch = |s: f64| {
        nodes
            .iter()
            .map(|&i| (sol.values[i] - sol.value_at(sol.t(i) + s)).abs())
            .fold(0.0, f64::max)
    };
    let lo = sol.h;
    let ds = (window - lo) / SHIFT_GRID as f64;
    let curve: Vec<f64> = (0..=SHIFT_GRID)
        .into_par_iter()
        .map(|j| mismatch(lo + ds * j as f64))
        .collect();
    let Some(peak) = (1..curve.len()).find(|&j| curve[j] < curve[j - 1]) else {
        return Ok(curve[SHIFT_GRID] / norm);
    };
    let (jbest, &cbest) = curve[peak..]
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(j, c)| (j + peak, c))
        .expect("nonempty tail");
    let a = lo + ds * jbest.saturating_sub(1).max(peak - 1) as f64;
    let b = lo + ds * (jbest + 1).min(SHIFT_GRID) as f64;
    let (_, refined) = golden_min(mismatch, a, b, 60);
    Ok(cbest.min(refined) / norm)
}

/// `exp(−1/(u(1−u)))` on `(0, 1)`, zero elsewhere, with its derivative.
pub fn bump(u: f64) -> (f64, f64) {
    if u <= 0.0 || u >= 1.0 {
        return (0.0, 0.0);
    }
    let w = u * (1.0 - u);
    let phi = (-1.0 / w).exp();
    (phi, phi * (1.0 - 2.0 * u) / (w * w))
}

/// Initial data: a bump supported on the middle half of `[0, 2γ]` with
/// height `amplitude`. All boundary data vanish, so the edge residual is 0.
pub fn bump_history(gamma: f64, n_window: usize, amplitude: f64) -> Result<DdeSolution> {
    let (a, w) = (0.5 * gamma, gamma);
    // bump peaks at exp(-4)
    let scale = amplitude * 4f64.exp();
    DdeSolution::from_fn(
        |t| scale * bump((t - a) / w).0,
        |t| scale * bump((t - a) / w).1 / w,
        gamma,
        0.0,
        n_window,
    )
}

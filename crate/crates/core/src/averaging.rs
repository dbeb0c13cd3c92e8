//! Interval averages `(A_x f)(r) = (1/2r) ∫_{x-r}^{x+r} f` and their radial
//! derivative.
//!
//! Averaging acts diagonally on Fourier modes: mode `k` is multiplied by
//! `sin(ωr)/(ωr)`. Trigonometric inputs use that multiplier; black-box inputs
//! use composite Simpson with a panel count proportional to `r`. Both paths
//! are public so each can serve as the other's oracle.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::periodic::{FourierSeries, FunctionHandle, SineParams};
use crate::quad::{panels_for, simpson};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum DerivativeMode {
    Analytic,
    FiniteDifference { h: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AveragingConfig {
    /// Simpson subintervals per unit length of the averaging window.
    pub quadrature_order: usize,
    pub derivative_mode: DerivativeMode,
}

impl Default for AveragingConfig {
    fn default() -> Self {
        Self {
            quadrature_order: 64,
            derivative_mode: DerivativeMode::Analytic,
        }
    }
}

impl AveragingConfig {
    pub fn with_order(quadrature_order: usize) -> Self {
        Self {
            quadrature_order,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.quadrature_order < 2 {
            return Err(Error::InvalidParameter("quadrature_order must be at least 2".into()));
        }
        if let DerivativeMode::FiniteDifference { h } = self.derivative_mode {
            if !(h > 0.0) {
                return Err(Error::InvalidParameter("finite-difference step must be positive".into()));
            }
        }
        Ok(())
    }
}

/// `sin t / t`, continuous at 0.
pub fn sinc(t: f64) -> f64 {
    if t.abs() < 1e-4 {
        let t2 = t * t;
        1.0 - t2 / 6.0 + t2 * t2 / 120.0
    } else {
        t.sin() / t
    }
}

/// Derivative of [`sinc`]: `(t cos t − sin t) / t²`.
pub fn sinc_prime(t: f64) -> f64 {
    if t.abs() < 1e-3 {
        let t2 = t * t;
        -t / 3.0 + t * t2 / 30.0 - t * t2 * t2 / 840.0
    } else {
        (t * t.cos() - t.sin()) / (t * t)
    }
}

fn check_radius(r: f64) -> Result<()> {
    if r > 0.0 {
        Ok(())
    } else {
        Err(Error::NonPositiveRadius(r))
    }
}

/// Closed-form average of a Fourier series via the multiplier.
pub fn multiplier_average(f: &FourierSeries, x: f64, r: f64) -> Result<f64> {
    check_radius(r)?;
    Ok(f.mean() + fourier_excess(f, x, r))
}

/// Average minus the mean, without forming `mean + small`.
fn fourier_excess(f: &FourierSeries, x: f64, r: f64) -> f64 {
    f.coeffs()
        .iter()
        .map(|m| {
            let w = f.omega(m.k);
            let (s, c) = (w * x).sin_cos();
            sinc(w * r) * (m.a * s + m.b * c)
        })
        .sum()
}

fn sine_excess(p: &SineParams, x: f64, r: f64) -> f64 {
    p.b * sinc(p.c * r) * (p.c * x + p.d).sin()
}

/// Composite Simpson average, valid for any handle.
pub fn average_by_quadrature(f: &FunctionHandle, x: f64, r: f64, cfg: &AveragingConfig) -> Result<f64> {
    check_radius(r)?;
    let n = panels_for(2.0 * r, cfg.quadrature_order);
    Ok(simpson(|z| f.evaluate(z), x - r, x + r, n) / (2.0 * r))
}

/// `(1/2r) ∫_{x-r}^{x+r} f`.
pub fn average(f: &FunctionHandle, x: f64, r: f64, cfg: &AveragingConfig) -> Result<f64> {
    check_radius(r)?;
    match f {
        FunctionHandle::Fourier(s) => multiplier_average(s, x, r),
        FunctionHandle::Sine(p) => Ok(p.a + sine_excess(p, x, r)),
        FunctionHandle::BlackBox(_) => average_by_quadrature(f, x, r, cfg),
    }
}

/// Average with `r = 0` read as point evaluation, returned relative to
/// `f.known_mean()` (or 0) so the small oscillating part keeps full
/// precision.
pub(crate) fn average_excess(f: &FunctionHandle, x: f64, r: f64, cfg: &AveragingConfig) -> f64 {
    match f {
        FunctionHandle::Fourier(s) => {
            if r == 0.0 {
                s.evaluate(x) - s.mean()
            } else {
                fourier_excess(s, x, r)
            }
        }
        FunctionHandle::Sine(p) => sine_excess(p, x, r),
        FunctionHandle::BlackBox(_) => {
            if r == 0.0 {
                f.evaluate(x)
            } else {
                let n = panels_for(2.0 * r, cfg.quadrature_order);
                simpson(|z| f.evaluate(z), x - r, x + r, n) / (2.0 * r)
            }
        }
    }
}

/// `−(1/2r²) ∫ f + (1/2r)(f(x+r) + f(x−r))` with the integral by Simpson.
pub fn d_average_dr_by_quadrature(
    f: &FunctionHandle,
    x: f64,
    r: f64,
    cfg: &AveragingConfig,
) -> Result<f64> {
    check_radius(r)?;
    let n = panels_for(2.0 * r, cfg.quadrature_order);
    let integral = simpson(|z| f.evaluate(z), x - r, x + r, n);
    Ok(-integral / (2.0 * r * r) + (f.evaluate(x + r) + f.evaluate(x - r)) / (2.0 * r))
}

/// Multiplier form `Σ ω sinc'(ωr)(a sin ωx + b cos ωx)`.
pub fn multiplier_d_average_dr(f: &FourierSeries, x: f64, r: f64) -> Result<f64> {
    check_radius(r)?;
    Ok(f
        .coeffs()
        .iter()
        .map(|m| {
            let w = f.omega(m.k);
            let (s, c) = (w * x).sin_cos();
            w * sinc_prime(w * r) * (m.a * s + m.b * c)
        })
        .sum())
}

/// `∂_r (A_x f)(r)`.
pub fn d_average_dr(f: &FunctionHandle, x: f64, r: f64, cfg: &AveragingConfig) -> Result<f64> {
    check_radius(r)?;
    match cfg.derivative_mode {
        DerivativeMode::Analytic => match f {
            FunctionHandle::Fourier(s) => multiplier_d_average_dr(s, x, r),
            FunctionHandle::Sine(p) => {
                Ok(p.b * p.c * sinc_prime(p.c * r) * (p.c * x + p.d).sin())
            }
            FunctionHandle::BlackBox(_) => d_average_dr_by_quadrature(f, x, r, cfg),
        },
        DerivativeMode::FiniteDifference { h } => {
            let h = h.min(0.5 * r);
            let hi = average(f, x, r + h, cfg)?;
            let lo = average(f, x, r - h, cfg)?;
            Ok((hi - lo) / (2.0 * h))
        }
    }
}

/// `max_{x ∈ grid} |∂_r (A_x f)(γ)|`; zero exactly when `γ` is a common
/// critical radius on the grid.
pub fn criticality_residual(
    f: &FunctionHandle,
    gamma: f64,
    x_grid: &[f64],
    cfg: &AveragingConfig,
) -> Result<f64> {
    check_radius(gamma)?;
    if x_grid.is_empty() {
        return Err(Error::InvalidParameter("x grid must be nonempty".into()));
    }
    x_grid.iter().try_fold(0.0f64, |acc, &x| {
        Ok(acc.max(d_average_dr(f, x, gamma, cfg)?.abs()))
    })
}

/// [`criticality_residual`] for many radii at once. Trigonometric handles
/// tabulate their modes on the grid once and reuse the table for every
/// radius.
pub fn criticality_scan(
    f: &FunctionHandle,
    gammas: &[f64],
    x_grid: &[f64],
    cfg: &AveragingConfig,
) -> Result<Vec<f64>> {
    use rayon::prelude::*;

    if x_grid.is_empty() {
        return Err(Error::InvalidParameter("x grid must be nonempty".into()));
    }
    if let Some(&g) = gammas.iter().find(|&&g| !(g > 0.0)) {
        return Err(Error::NonPositiveRadius(g));
    }
    let analytic = matches!(cfg.derivative_mode, DerivativeMode::Analytic);
    let series = match f {
        FunctionHandle::Fourier(s) if analytic => Some(s.clone()),
        FunctionHandle::Sine(p) if analytic => Some(p.to_fourier()),
        _ => None,
    };
    let Some(series) = series else {
        return gammas
            .par_iter()
            .map(|&g| criticality_residual(f, g, x_grid, cfg))
            .collect();
    };
    // table[j][i] = a_j sin(ω_j x_i) + b_j cos(ω_j x_i)
    let table: Vec<Vec<f64>> = series
        .coeffs()
        .iter()
        .map(|m| {
            let w = series.omega(m.k);
            x_grid
                .iter()
                .map(|&x| {
                    let (s, c) = (w * x).sin_cos();
                    m.a * s + m.b * c
                })
                .collect()
        })
        .collect();
    let omegas: Vec<f64> = series.coeffs().iter().map(|m| series.omega(m.k)).collect();
    Ok(gammas
        .par_iter()
        .map(|&g| {
            let mult: Vec<f64> = omegas.iter().map(|&w| w * sinc_prime(w * g)).collect();
            (0..x_grid.len())
                .map(|i| {
                    mult.iter()
                        .zip(&table)
                        .map(|(m, row)| m * row[i])
                        .sum::<f64>()
                        .abs()
                })
                .fold(0.0, f64::max)
        })
        .collect())
}

/// Uniform grid of `n` points covering one period `[0, period)`.
pub fn period_grid(period: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| period * i as f64 / n as f64).collect()
}

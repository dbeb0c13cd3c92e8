//! The Poincaré inequality on `[0, 1]` controlled by the uncentered length
//! function: `∫|f − f̄| ≤ 4 ‖r*_f‖∞ ∫|f'|`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::maximal::{clipped_length_profile, fmt_num, LengthProfile, MaximalConfig, UncenteredSearch};
use crate::periodic::FunctionHandle;
use crate::quad::simpson;

/// Panels for the `[0, 1]` integrals; the kinks of `|f − f̄|` and `|f'|` limit
/// Simpson to second order, so the grid is fine.
const PANELS: usize = 1 << 15;

/// Both sides of the inequality for one function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PoincareReport {
    /// `∫₀¹ |f − f̄|`.
    pub lhs: f64,
    /// `max r*_{f − f̄}` over the x-grid.
    pub r_star_sup: f64,
    /// `∫₀¹ |f'|`.
    pub tv: f64,
    /// `lhs / (r_star_sup · tv)`, 0 for degenerate inputs.
    pub ratio: f64,
    /// Longest interval on which `f − f̄ < 0`.
    pub max_neg_component: f64,
    /// Spacing of the x-grid: `r*` between grid points is not sampled.
    pub grid_slack: f64,
    /// `f` is constant (zero total variation); the inequality reads `0 ≤ 0`.
    pub degenerate: bool,
}

/// `∫₀¹ f`.
pub fn mean_on_unit(f: &FunctionHandle) -> f64 {
    simpson(|x| f.evaluate(x), 0.0, 1.0, PANELS)
}

/// `∫₀¹ |f'|`.
pub fn total_variation(f: &FunctionHandle) -> f64 {
    simpson(|x| f.derivative(x).abs(), 0.0, 1.0, PANELS)
}

/// Longest run of `g < 0` on `grid` equispaced points of `[0, 1]`, with the
/// ends of each run placed at the linearly interpolated zero crossings.
/// Samples within `1e-12 ‖g‖∞` of zero count as nonnegative.
fn longest_negative_run<G: Fn(f64) -> f64>(g: G, grid: usize) -> f64 {
    let n = grid.max(2);
    let xs: Vec<f64> = (0..n).map(|i| i as f64 / (n - 1) as f64).collect();
    let ys: Vec<f64> = xs.iter().map(|&x| g(x)).collect();
    // values indistinguishable from zero are not negative
    let tol = 1e-12 * ys.iter().fold(0.0, |m: f64, y| m.max(y.abs()));
    let crossing = |i: usize| {
        // zero of the chord between samples i and i + 1
        let (y0, y1) = (ys[i], ys[i + 1]);
        xs[i] + (xs[i + 1] - xs[i]) * y0 / (y0 - y1)
    };
    let mut best: f64 = 0.0;
    let mut start: Option<f64> = None;
    for i in 0..n {
        match (ys[i] < -tol, start) {
            (true, None) => start = Some(if i == 0 { 0.0 } else { crossing(i - 1) }),
            (false, Some(s)) => {
                best = best.max(crossing(i - 1) - s);
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        best = best.max(1.0 - s);
    }
    best
}

/// Length of the longest connected component of `{f < 0}` for a mean-zero
/// `f` on `[0, 1]`.
pub fn negative_component_bound(f: &FunctionHandle, grid: usize) -> Result<f64> {
    let m = mean_on_unit(f);
    if m.abs() > 1e-8 {
        return Err(Error::Precondition(format!("mean {m:e} is not zero")));
    }
    Ok(longest_negative_run(|x| f.evaluate(x), grid))
}

/// All report fields; `r*` is computed for `f − f̄` on `grid` points.
pub fn poincare_report(f: &FunctionHandle, grid: usize, cfg: &MaximalConfig) -> Result<PoincareReport> {
    if grid < 2 {
        return Err(Error::InvalidParameter("grid needs at least 2 points".into()));
    }
    let mean = mean_on_unit(f);
    let g = move |x: f64| f.evaluate(x) - mean;
    let lhs = simpson(|x| g(x).abs(), 0.0, 1.0, PANELS);
    let tv = total_variation(f);
    let max_neg_component = longest_negative_run(g, grid);
    let grid_slack = 1.0 / (grid - 1) as f64;
    let scale = sup_on_unit(f);
    if tv <= 1e-12 * scale.max(1.0) {
        return Ok(PoincareReport {
            lhs,
            r_star_sup: 0.0,
            tv,
            ratio: 0.0,
            max_neg_component,
            grid_slack,
            degenerate: true,
        });
    }
    let search = UncenteredSearch::new(g, cfg)?;
    let r_star_sup = (0..grid)
        .into_par_iter()
        .map(|i| {
            search
                .search(i as f64 / (grid - 1) as f64)
                .map(|p| p.length())
        })
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    let ratio = if r_star_sup > 0.0 {
        lhs / (r_star_sup * tv)
    } else {
        f64::INFINITY
    };
    Ok(PoincareReport {
        lhs,
        r_star_sup,
        tv,
        ratio,
        max_neg_component,
        grid_slack,
        degenerate: false,
    })
}

/// Centered length function of `1 − (x − ½)²` with windows clipped to
/// `[0, 1]`, on 256 points. Strict concavity makes every centred average
/// fall below the point value, so `r_f ≡ 0` and no centred analogue of the
/// inequality can hold.
pub fn centered_counterexample_demo() -> Result<LengthProfile> {
    let cfg = MaximalConfig {
        r_grid: 256,
        ..MaximalConfig::default()
    };
    clipped_length_profile(|x| 1.0 - (x - 0.5) * (x - 0.5), 0.0, 1.0, 256, &cfg)
}

/// Writes one CSV row per labelled report.
pub fn write_reports_csv<W: std::io::Write>(rows: &[(String, PoincareReport)], w: W) -> Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    wr.write_record([
        "label",
        "lhs",
        "r_star_sup",
        "tv",
        "ratio",
        "max_neg_component",
        "grid_slack",
        "degenerate",
    ])?;
    for (label, r) in rows {
        wr.write_record([
            label.clone(),
            fmt_num(r.lhs),
            fmt_num(r.r_star_sup),
            fmt_num(r.tv),
            fmt_num(r.ratio),
            fmt_num(r.max_neg_component),
            fmt_num(r.grid_slack),
            r.degenerate.to_string(),
        ])?;
    }
    wr.flush()?;
    Ok(())
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::InvalidParameter("need two or more paired samples".into()));
    }
    if xs.iter().chain(ys).any(|&v| !(v > 0.0)) {
        return Err(Error::InvalidParameter("log-log fit needs positive data".into()));
    }
    let lx: Vec<f64> = xs.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidParameter("abscissae coincide".into()));
    }
    Ok(sxy / sxx)
}

/// `max |f|` over 1025 points of `[0, 1]`.
fn sup_on_unit(f: &FunctionHandle) -> f64 {
    (0..=1024)
        .map(|i| f.evaluate(i as f64 / 1024.0).abs())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::periodic::{FourierSeries, Mode};
    use std::f64::consts::PI;

    fn sin_unit(n: u32) -> FunctionHandle {
        // sin(nπx) has period 2/n
        FourierSeries::with_period(0.0, vec![Mode::new(1, 1.0, 0.0)], 2.0 / n as f64)
            .unwrap()
            .into()
    }

    #[test]
    fn sine_report() {
        let cfg = MaximalConfig::default();
        let r = poincare_report(&sin_unit(2), 128, &cfg).unwrap();
        assert!((r.lhs - 2.0 / PI).abs() < 1e-6);
        assert!((r.tv - 4.0).abs() < 1e-6);
        assert!(r.ratio <= 4.0);
        assert!(!r.degenerate);
        assert!((r.max_neg_component - 0.5).abs() < 1e-3);
    }

    #[test]
    fn constant_is_flagged() {
        let f: FunctionHandle = FourierSeries::constant(3.0).into();
        let r = poincare_report(&f, 16, &MaximalConfig::default()).unwrap();
        assert!(r.degenerate);
        assert!(r.lhs.abs() < 1e-12);
        assert_eq!(r.ratio, 0.0);
    }

    #[test]
    fn negative_components() {
        assert!((negative_component_bound(&sin_unit(2), 1000).unwrap() - 0.5).abs() < 1e-6);
        assert!((negative_component_bound(&sin_unit(4), 1000).unwrap() - 0.25).abs() < 1e-6);
        let shifted: FunctionHandle = FourierSeries::constant(1.0).into();
        assert!(matches!(
            negative_component_bound(&shifted, 100),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn concave_demo_is_flat() {
        let p = centered_counterexample_demo().unwrap();
        assert_eq!(p.len(), 256);
        assert!(p.r_values.iter().all(|&r| r <= 1e-9));
    }

    #[test]
    fn slope_of_power_law() {
        let xs = [1.0, 2.0, 4.0, 8.0];
        let ys: Vec<f64> = xs.iter().map(|x: &f64| 3.0 * x.powf(-1.5)).collect();
        assert!((loglog_slope(&xs, &ys).unwrap() + 1.5).abs() < 1e-12);
        assert!(loglog_slope(&[1.0], &[1.0]).is_err());
    }

    #[test]
    fn csv_rows() {
        let r = poincare_report(&sin_unit(2), 16, &MaximalConfig::default()).unwrap();
        let mut buf = Vec::new();
        write_reports_csv(&[("sin".into(), r)], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 2);
        assert!(text.starts_with("label,lhs"));
    }
}

//! Signed maximal function and the length function `r_f`.
//!
//! For a centre `x` the radial profile `h(r) = (A_x f)(r)` (with `h(0) =
//! f(x)`) is sampled on a uniform grid over `[0, r_max]`. Every grid local
//! maximum is refined by golden-section search; the sup is the best refined
//! value and `r_f(x)` the smallest refined radius within `value_tol` of it.
//! Averages tend to the mean as `r → ∞`, so the mean is compared as well: if
//! it beats every finite radius, the sup is only reached in the limit and the
//! result carries `r_max` with `limit_only` set.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::averaging::{average_excess, AveragingConfig};
use crate::error::{Error, Result};
use crate::periodic::FunctionHandle;
use crate::quad::{panels_for, simpson, PrefixIntegral};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct MaximalConfig {
    /// Search ceiling; `None` means four periods.
    pub r_max: Option<f64>,
    pub r_grid: usize,
    pub refine_iters: usize,
    pub value_tol: f64,
    pub cluster_tol: f64,
    /// Average `|f|` instead of `f` (the classical maximal function).
    pub absolute: bool,
    /// Endpoint grid per axis for the uncentered search on `[0, 1]`.
    pub endpoint_grid: usize,
    pub averaging: AveragingConfig,
}

impl Default for MaximalConfig {
    fn default() -> Self {
        Self {
            r_max: None,
            r_grid: 2048,
            refine_iters: 60,
            value_tol: 1e-9,
            cluster_tol: 1e-4,
            absolute: false,
            endpoint_grid: 512,
            averaging: AveragingConfig::default(),
        }
    }
}

impl MaximalConfig {
    pub fn validate(&self) -> Result<()> {
        if let Some(r) = self.r_max {
            if !(r > 0.0) {
                return Err(Error::InvalidParameter("r_max must be positive".into()));
            }
        }
        if self.r_grid < 3 {
            return Err(Error::InvalidParameter("r_grid must be at least 3".into()));
        }
        if !(self.value_tol >= 0.0 && self.value_tol < self.cluster_tol) {
            return Err(Error::InvalidParameter(
                "need 0 <= value_tol < cluster_tol".into(),
            ));
        }
        if self.endpoint_grid < 2 {
            return Err(Error::InvalidParameter("endpoint_grid must be at least 2".into()));
        }
        self.averaging.validate()
    }

    pub fn r_max_for(&self, f: &FunctionHandle) -> f64 {
        self.r_max.unwrap_or(4.0 * f.period())
    }
}

/// Outcome of the radial search at one centre.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaximalPoint {
    pub value: f64,
    pub r: f64,
    /// The mean beat every radius in `[0, r_max]`.
    pub limit_only: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LengthProfile {
    pub x_samples: Vec<f64>,
    pub r_values: Vec<f64>,
    pub value_set: Vec<f64>,
    pub sup_values: Vec<f64>,
    pub limit_only: Vec<bool>,
}

impl LengthProfile {
    fn from_points(x_samples: Vec<f64>, points: Vec<MaximalPoint>, cluster_tol: f64) -> Self {
        let r_values: Vec<f64> = points.iter().map(|p| p.r).collect();
        Self {
            value_set: cluster(&r_values, cluster_tol),
            sup_values: points.iter().map(|p| p.value).collect(),
            limit_only: points.iter().map(|p| p.limit_only).collect(),
            r_values,
            x_samples,
        }
    }

    pub fn len(&self) -> usize {
        self.x_samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x_samples.is_empty()
    }

    /// CSV with columns `x, r_f, M_f`.
    pub fn write_csv<W: std::io::Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["x", "r_f", "M_f"])?;
        for i in 0..self.len() {
            out.write_record([
                fmt_num(self.x_samples[i]),
                fmt_num(self.r_values[i]),
                fmt_num(self.sup_values[i]),
            ])?;
        }
        out.flush()?;
        Ok(())
    }
}

pub(crate) fn fmt_num(v: f64) -> String {
    format!("{v:.12e}")
}

/// Golden-section maximisation on `[lo, hi]`; returns the best evaluated
/// point including both ends.
pub(crate) fn golden_max<F: Fn(f64) -> f64>(h: F, lo: f64, hi: f64, iters: usize) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut best = (lo, h(lo));
    let end = (hi, h(hi));
    if end.1 > best.1 {
        best = end;
    }
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = h(c);
    let mut fd = h(d);
    for _ in 0..iters {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = h(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = h(d);
        }
    }
    for p in [(c, fc), (d, fd)] {
        if p.1 > best.1 {
            best = p;
        }
    }
    best
}

/// Golden-section minimisation, the mirror of [`golden_max`].
pub(crate) fn golden_min<F: Fn(f64) -> f64>(h: F, lo: f64, hi: f64, iters: usize) -> (f64, f64) {
    let (t, v) = golden_max(|s| -h(s), lo, hi, iters);
    (t, -v)
}

/// Radial search on `h` over `[0, r_max]`, `h(0)` being point evaluation.
/// `limit` is the large-radius value to compare against, if known.
pub(crate) fn radial_search<F: Fn(f64) -> f64>(
    h: F,
    r_max: f64,
    limit: Option<f64>,
    cfg: &MaximalConfig,
) -> MaximalPoint {
    let n = cfg.r_grid;
    let step = r_max / (n - 1) as f64;
    let grid: Vec<f64> = (0..n).map(|i| h(step * i as f64)).collect();

    let mut candidates: Vec<(f64, f64)> = Vec::new();
    for i in 0..n {
        let left_ok = i == 0 || grid[i] > grid[i - 1];
        let right_ok = i + 1 == n || grid[i] >= grid[i + 1];
        if !(left_ok && right_ok) {
            continue;
        }
        let lo = step * i.saturating_sub(1) as f64;
        let hi = (step * (i + 1) as f64).min(r_max);
        let mut best = golden_max(&h, lo, hi, cfg.refine_iters);
        if grid[i] >= best.1 {
            best = (step * i as f64, grid[i]);
        }
        candidates.push(best);
    }
    // r = 0 always competes, even when the grid rises immediately
    candidates.push((0.0, grid[0]));

    let sup = candidates
        .iter()
        .map(|c| c.1)
        .fold(f64::NEG_INFINITY, f64::max);
    if let Some(m) = limit {
        if m > sup + cfg.value_tol {
            return MaximalPoint {
                value: m,
                r: r_max,
                limit_only: true,
            };
        }
    }
    let r = candidates
        .iter()
        .filter(|c| c.1 >= sup - cfg.value_tol)
        .map(|c| c.0)
        .fold(f64::INFINITY, f64::min);
    MaximalPoint {
        value: sup,
        r,
        limit_only: false,
    }
}

/// Reference length function: the smallest of `n_radii + 1` equispaced
/// radii in `[0, r_max]` whose average is within `value_tol` of the best
/// one, without any refinement.
pub fn dense_length_scan(f: &FunctionHandle, x: f64, r_max: f64, n_radii: usize, value_tol: f64) -> f64 {
    let cfg = AveragingConfig::default();
    let step = r_max / n_radii.max(1) as f64;
    let vals: Vec<f64> = (0..=n_radii)
        .into_par_iter()
        .map(|j| average_excess(f, x, step * j as f64, &cfg))
        .collect();
    let best = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let j = vals.iter().position(|&v| v >= best - value_tol).unwrap_or(0);
    step * j as f64
}

/// Radial search for `f` centred at `x`.
pub fn maximal_search(f: &FunctionHandle, x: f64, cfg: &MaximalConfig) -> MaximalPoint {
    let r_max = cfg.r_max_for(f);
    if cfg.absolute {
        let n_per = cfg.averaging.quadrature_order;
        let h = |r: f64| {
            if r == 0.0 {
                f.evaluate(x).abs()
            } else {
                simpson(|z| f.evaluate(z).abs(), x - r, x + r, panels_for(2.0 * r, n_per))
                    / (2.0 * r)
            }
        };
        let p = f.period();
        let limit = simpson(|z| f.evaluate(z).abs(), 0.0, p, panels_for(p, 4 * n_per)) / p;
        return radial_search(h, r_max, Some(limit), cfg);
    }
    let base = f.known_mean().unwrap_or(0.0);
    let limit = match f.known_mean() {
        Some(_) => 0.0,
        None => {
            let p = f.period();
            simpson(|z| f.evaluate(z), 0.0, p, panels_for(p, 4 * cfg.averaging.quadrature_order))
                / p
        }
    };
    let h = |r: f64| average_excess(f, x, r, &cfg.averaging);
    let mut point = radial_search(h, r_max, Some(limit), cfg);
    point.value += base;
    point
}

/// `sup_{r ∈ [0, r_max]}` of the signed average, `r = 0` being point
/// evaluation; set `cfg.absolute` for the classical `|f|` version.
pub fn maximal_value(f: &FunctionHandle, x: f64, cfg: &MaximalConfig) -> f64 {
    maximal_search(f, x, cfg).value
}

/// Smallest radius attaining the maximal value within `value_tol`.
pub fn length_function(f: &FunctionHandle, x: f64, cfg: &MaximalConfig) -> f64 {
    maximal_search(f, x, cfg).r
}

/// `r_f` on `n_x` equispaced centres in one period.
pub fn length_profile(f: &FunctionHandle, cfg: &MaximalConfig, n_x: usize) -> Result<LengthProfile> {
    cfg.validate()?;
    if n_x < 2 {
        return Err(Error::InvalidParameter("n_x must be at least 2".into()));
    }
    let p = f.period();
    let xs: Vec<f64> = (0..n_x).map(|i| p * i as f64 / n_x as f64).collect();
    let points: Vec<MaximalPoint> = xs.par_iter().map(|&x| maximal_search(f, x, cfg)).collect();
    Ok(LengthProfile::from_points(xs, points, cfg.cluster_tol))
}

/// Single-linkage clustering of reals at gap `tol`; returns cluster means,
/// ascending.
pub fn cluster(values: &[f64], tol: f64) -> Vec<f64> {
    let mut v: Vec<f64> = values.iter().copied().filter(|x| x.is_finite()).collect();
    v.sort_by(f64::total_cmp);
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=v.len() {
        if i == v.len() || v[i] - v[i - 1] > tol {
            if i > start {
                let m = v[start..i].iter().sum::<f64>() / (i - start) as f64;
                out.push(m);
            }
            start = i;
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoValuedReport {
    pub two_valued: bool,
    pub value_set: Vec<f64>,
    pub profile: LengthProfile,
    pub negated_profile: LengthProfile,
}

/// Whether `⋃_x {r_f(x), r_{-f}(x)}` has at most two clustered values.
pub fn two_valued_check(f: &FunctionHandle, cfg: &MaximalConfig, n_x: usize) -> Result<TwoValuedReport> {
    let profile = length_profile(f, cfg, n_x)?;
    let negated_profile = length_profile(&f.negated(), cfg, n_x)?;
    let all: Vec<f64> = profile
        .r_values
        .iter()
        .chain(&negated_profile.r_values)
        .copied()
        .collect();
    let value_set = cluster(&all, cfg.cluster_tol);
    Ok(TwoValuedReport {
        two_valued: value_set.len() <= 2,
        value_set,
        profile,
        negated_profile,
    })
}

/// Centered length function for `f` on `[lo, hi]`, with windows clipped to
/// the domain (`r ≤ min(x − lo, hi − x)`), on `n_x` points including both
/// ends.
pub fn clipped_length_profile<F>(f: F, lo: f64, hi: f64, n_x: usize, cfg: &MaximalConfig) -> Result<LengthProfile>
where
    F: Fn(f64) -> f64 + Sync,
{
    cfg.validate()?;
    if n_x < 2 || !(hi > lo) {
        return Err(Error::InvalidParameter("need n_x >= 2 and hi > lo".into()));
    }
    let xs: Vec<f64> = (0..n_x)
        .map(|i| lo + (hi - lo) * i as f64 / (n_x - 1) as f64)
        .collect();
    let order = cfg.averaging.quadrature_order.max(16);
    let points: Vec<MaximalPoint> = xs
        .par_iter()
        .map(|&x| {
            let r_max = (x - lo).min(hi - x);
            if r_max <= 0.0 {
                return MaximalPoint {
                    value: f(x),
                    r: 0.0,
                    limit_only: false,
                };
            }
            let h = |r: f64| {
                if r == 0.0 {
                    f(x)
                } else {
                    simpson(&f, x - r, x + r, panels_for(2.0 * r, order).max(8)) / (2.0 * r)
                }
            };
            radial_search(h, r_max, None, cfg)
        })
        .collect();
    Ok(LengthProfile::from_points(xs, points, cfg.cluster_tol))
}

/// One evaluation of the uncentered search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UncenteredPoint {
    pub value: f64,
    pub left: f64,
    pub right: f64,
}

impl UncenteredPoint {
    pub fn length(&self) -> f64 {
        self.right - self.left
    }
}

/// Precomputed cumulative integral of a function on `[0, 1]`, shared across
/// many uncentered queries.
pub struct UncenteredSearch<F> {
    f: F,
    prefix: PrefixIntegral,
    cfg: MaximalConfig,
}

impl<F: Fn(f64) -> f64 + Sync> UncenteredSearch<F> {
    pub fn new(f: F, cfg: &MaximalConfig) -> Result<Self> {
        cfg.validate()?;
        let prefix = PrefixIntegral::new(&f, 0.0, 1.0, cfg.endpoint_grid, 8);
        Ok(Self {
            f,
            prefix,
            cfg: *cfg,
        })
    }

    fn integral(&self, t: f64) -> f64 {
        self.prefix.at(&self.f, t)
    }

    fn avg(&self, u: f64, v: f64) -> f64 {
        if v - u <= 1e-14 {
            (self.f)(0.5 * (u + v))
        } else {
            (self.integral(v) - self.integral(u)) / (v - u)
        }
    }

    /// Sup of `|J|⁻¹ ∫_J f` over intervals `J ⊆ [0, 1]` containing `x`, and
    /// the shortest interval attaining it.
    pub fn search(&self, x: f64) -> Result<UncenteredPoint> {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::Domain(x));
        }
        let g = self.prefix.cells();
        let fx = (self.f)(x);
        let ix = self.integral(x);
        // left endpoints in [0, x], right endpoints in [x, 1]; x itself is
        // included on both sides
        let mut lefts: Vec<(f64, f64)> = (0..=g)
            .map(|j| (self.prefix.node(j), self.prefix.at_node(j)))
            .filter(|(t, _)| *t < x)
            .collect();
        lefts.push((x, ix));
        let mut rights: Vec<(f64, f64)> = vec![(x, ix)];
        rights.extend(
            (0..=g)
                .map(|j| (self.prefix.node(j), self.prefix.at_node(j)))
                .filter(|(t, _)| *t > x),
        );

        let tol = self.cfg.value_tol;
        let pairs = || {
            lefts.iter().flat_map(|&(u, fu)| {
                rights
                    .iter()
                    .filter(move |&&(v, _)| v > u)
                    .map(move |&(v, fv)| (u, v, (fv - fu) / (v - u)))
            })
        };
        let sup = pairs().map(|p| p.2).fold(fx, f64::max);
        let mut best = UncenteredPoint {
            value: fx,
            left: x,
            right: x,
        };
        if fx < sup - tol {
            best.value = f64::NEG_INFINITY;
            for (u, v, a) in pairs() {
                if a >= sup - tol && (best.value == f64::NEG_INFINITY || v - u < best.length()) {
                    best = UncenteredPoint {
                        value: a,
                        left: u,
                        right: v,
                    };
                }
            }
        }
        if best.length() == 0.0 {
            return Ok(best);
        }

        // coordinate-wise golden refinement within one cell of the grid optimum
        let cell = 1.0 / g as f64;
        let (mut u, mut v) = (best.left, best.right);
        let iters = self.cfg.refine_iters;
        for _ in 0..6 {
            let (nu, _) = golden_max(
                |s| self.avg(s, v),
                (u - cell).max(0.0),
                (u + cell).min(x),
                iters,
            );
            u = nu;
            let (nv, _) = golden_max(
                |s| self.avg(u, s),
                (v - cell).max(x),
                (v + cell).min(1.0),
                iters,
            );
            v = nv;
        }
        let refined = UncenteredPoint {
            value: self.avg(u, v),
            left: u,
            right: v,
        };
        let best = if refined.value >= best.value { refined } else { best };
        if fx >= best.value - tol {
            return Ok(UncenteredPoint {
                value: fx.max(best.value),
                left: x,
                right: x,
            });
        }
        Ok(best)
    }
}

/// `r*_f(x)`: length of the shortest interval `J ∋ x` in `[0, 1]` attaining
/// the uncentered maximal value; 0 when point evaluation wins.
pub fn uncentered_length<F>(f: F, x: f64, cfg: &MaximalConfig) -> Result<f64>
where
    F: Fn(f64) -> f64 + Sync,
{
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(x));
    }
    Ok(UncenteredSearch::new(f, cfg)?.search(x)?.length())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::periodic::{FourierSeries, Mode, SineParams};
    use std::f64::consts::{FRAC_PI_2, PI};

    const GAMMA1: f64 = 4.493_409_457_909_064;

    fn sin_x() -> FunctionHandle {
        FourierSeries::new(0.0, vec![Mode::new(1, 1.0, 0.0)]).unwrap().into()
    }

    fn dense_argmax(f: &FunctionHandle, x: f64, r_max: f64, n: usize) -> (f64, f64) {
        let cfg = AveragingConfig::default();
        let mut best = (0.0, f.evaluate(x));
        for i in 1..=n {
            let r = r_max * i as f64 / n as f64;
            let v = crate::averaging::average(f, x, r, &cfg).unwrap();
            if v > best.1 + 1e-12 {
                best = (r, v);
            }
        }
        best
    }

    #[test]
    fn constant_has_zero_length() {
        let c: FunctionHandle = FourierSeries::constant(3.0).into();
        let cfg = MaximalConfig::default();
        assert_eq!(maximal_value(&c, 0.7, &cfg), 3.0);
        assert_eq!(length_function(&c, 0.7, &cfg), 0.0);
    }

    #[test]
    fn crest_and_trough_of_sine() {
        let cfg = MaximalConfig::default();
        let f = sin_x();
        assert!((maximal_value(&f, FRAC_PI_2, &cfg) - 1.0).abs() < 1e-15);
        assert_eq!(length_function(&f, FRAC_PI_2, &cfg), 0.0);
        let (r_dense, v_dense) = dense_argmax(&f, -FRAC_PI_2, 8.0 * PI, 200_000);
        assert!(r_dense == 0.0 || v_dense > 0.0);
        let m = maximal_search(&f, -FRAC_PI_2, &cfg);
        assert!(m.value > -1.0);
        assert!((m.value - v_dense).abs() < 1e-8);
        assert!((m.r - GAMMA1).abs() < 1e-3);
        assert!((m.r - r_dense).abs() < 1e-3);
    }

    #[test]
    fn absolute_flag_uses_modulus() {
        let cfg = MaximalConfig {
            absolute: true,
            r_grid: 256,
            ..MaximalConfig::default()
        };
        let f = sin_x();
        // |sin| peaks at the crest, so point evaluation wins
        assert!((maximal_value(&f, FRAC_PI_2, &cfg) - 1.0).abs() < 1e-12);
        let v = maximal_value(&f, 0.0, &cfg);
        assert!(v > 0.5 && v < 1.0);
    }

    #[test]
    fn profile_of_offset_sine_is_two_valued() {
        let f: FunctionHandle = SineParams::new(2.0, 1.0, 1.0, 0.0).unwrap().into();
        let cfg = MaximalConfig::default();
        let p = length_profile(&f, &cfg, 64).unwrap();
        assert_eq!(p.value_set.len(), 2);
        assert_eq!(p.value_set[0], 0.0);
        assert!((p.value_set[1] - GAMMA1).abs() < 1e-4);
        for i in 0..p.len() {
            assert!(p.sup_values[i] >= f.evaluate(p.x_samples[i]) - cfg.value_tol);
        }
    }

    #[test]
    fn two_valued_examples() {
        let cfg = MaximalConfig::default();
        let f: FunctionHandle = SineParams::new(1.0, 0.3, 2.0, 0.7).unwrap().into();
        let r = two_valued_check(&f, &cfg, 64).unwrap();
        assert!(r.two_valued);
        assert_eq!(r.value_set.len(), 2);
        assert!((r.value_set[1] - GAMMA1 / 2.0).abs() < 1e-4);

        let g: FunctionHandle =
            FourierSeries::new(0.0, vec![Mode::new(1, 1.0, 0.0), Mode::new(3, 1.0, 0.0)])
                .unwrap()
                .into();
        assert!(!two_valued_check(&g, &cfg, 64).unwrap().two_valued);

        let h: FunctionHandle =
            FourierSeries::new(0.0, vec![Mode::new(1, 1.0, 0.0), Mode::new(2, 0.5, 0.0)])
                .unwrap()
                .into();
        let r = two_valued_check(&h, &cfg, 64).unwrap();
        assert!(r.value_set.len() >= 3);

        let c: FunctionHandle = FourierSeries::constant(-1.0).into();
        let r = two_valued_check(&c, &cfg, 16).unwrap();
        assert!(r.two_valued);
        assert_eq!(r.value_set, vec![0.0]);
    }

    #[test]
    fn profile_rejects_bad_config() {
        let f = sin_x();
        assert!(length_profile(&f, &MaximalConfig::default(), 1).is_err());
        let bad = MaximalConfig {
            value_tol: 1e-2,
            cluster_tol: 1e-3,
            ..MaximalConfig::default()
        };
        assert!(length_profile(&f, &bad, 8).is_err());
    }

    #[test]
    fn cluster_merges_close_values() {
        let c = cluster(&[0.0, 1.0, 1.00005, 0.0, 2.0, 2.0002], 1e-4);
        assert_eq!(c.len(), 4);
        assert!((c[1] - 1.000025).abs() < 1e-12);
    }

    #[test]
    fn limit_only_when_mean_dominates() {
        // a radial profile that increases towards its limit never attains it
        let cfg = MaximalConfig::default();
        let p = radial_search(|r| -1.0 / (1.0 + r), 10.0, Some(0.0), &cfg);
        assert!(p.limit_only);
        assert_eq!(p.r, 10.0);
        assert_eq!(p.value, 0.0);
    }

    #[test]
    fn uncentered_examples() {
        let cfg = MaximalConfig::default();
        assert_eq!(uncentered_length(|_| 2.0, 0.3, &cfg).unwrap(), 0.0);
        let concave = |x: f64| 1.0 - (x - 0.5) * (x - 0.5);
        assert_eq!(uncentered_length(concave, 0.5, &cfg).unwrap(), 0.0);
        let s = |x: f64| (4.0 * PI * x).sin();
        let len = uncentered_length(s, 0.375, &cfg).unwrap();
        // closed-form antiderivative over a dense endpoint grid
        let anti = |t: f64| -(4.0 * PI * t).cos() / (4.0 * PI);
        let mut best = (s(0.375), 0.0);
        for i in 0..=1500 {
            let u = 0.375 * i as f64 / 1500.0;
            for j in 0..=3000 {
                let v = 0.375 + 0.625 * j as f64 / 3000.0;
                if v - u > 1e-12 {
                    let avg = (anti(v) - anti(u)) / (v - u);
                    if avg > best.0 {
                        best = (avg, v - u);
                    }
                }
            }
        }
        assert!((len - best.1).abs() < 2e-3, "{len} vs {}", best.1);
        assert!(matches!(uncentered_length(s, 1.5, &cfg), Err(Error::Domain(_))));
    }

    #[test]
    fn clipped_concave_profile_is_zero() {
        let cfg = MaximalConfig {
            r_grid: 256,
            ..MaximalConfig::default()
        };
        let p = clipped_length_profile(|x| 1.0 - (x - 0.5) * (x - 0.5), 0.0, 1.0, 33, &cfg).unwrap();
        assert!(p.r_values.iter().all(|&r| r == 0.0));
    }
}

//! Periodic sequences on `ℤ`: the discrete maximal function
//! `sup_r (2r+1)⁻¹ Σ_{|k−n|≤r} f(k)`, its integer length function, the
//! truncated alternating power-law example and sup-norm distance to sampled
//! sines.

use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};
use std::ops::RangeInclusive;

use microlp::{ComparisonOp, OptimizationDirection, Problem};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::maximal::{fmt_num, golden_min};
use crate::periodic::SineParams;

/// `f(n) = values[n mod P]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SignalRepr", into = "SignalRepr")]
pub struct LatticeSignal {
    values: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct SignalRepr {
    #[serde(default)]
    period: Option<usize>,
    values: Vec<f64>,
}

impl TryFrom<SignalRepr> for LatticeSignal {
    type Error = Error;

    fn try_from(r: SignalRepr) -> Result<Self> {
        if let Some(p) = r.period {
            if p != r.values.len() {
                return Err(Error::InvalidParameter(format!(
                    "period {p} but {} values",
                    r.values.len()
                )));
            }
        }
        Self::new(r.values)
    }
}

impl From<LatticeSignal> for SignalRepr {
    fn from(f: LatticeSignal) -> Self {
        Self {
            period: Some(f.values.len()),
            values: f.values,
        }
    }
}

impl LatticeSignal {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidParameter("signal needs at least one value".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("signal values must be finite".into()));
        }
        Ok(Self { values })
    }

    pub fn constant(c: f64, period: usize) -> Result<Self> {
        Self::new(vec![c; period])
    }

    pub fn period(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn at(&self, n: i64) -> f64 {
        self.values[n.rem_euclid(self.values.len() as i64) as usize]
    }

    pub fn mean(&self) -> f64 {
        neumaier(self.values.iter().copied()) / self.period() as f64
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn negated(&self) -> Self {
        Self {
            values: self.values.iter().map(|v| -v).collect(),
        }
    }

    pub fn map(&self, g: impl Fn(usize, f64) -> f64) -> Result<Self> {
        Self::new(self.values.iter().enumerate().map(|(i, &v)| g(i, v)).collect())
    }

    /// Writes `n,value` rows.
    pub fn write_csv<W: std::io::Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        wr.write_record(["n", "value"])?;
        for (n, v) in self.values.iter().enumerate() {
            wr.write_record([n.to_string(), fmt_num(*v)])?;
        }
        wr.flush()?;
        Ok(())
    }

    /// Reads `n,value` rows; `n` must run `0, 1, …, P−1`.
    pub fn read_csv<R: std::io::Read>(r: R) -> Result<Self> {
        let mut rd = csv::Reader::from_reader(r);
        let mut values = Vec::new();
        for (i, rec) in rd.deserialize::<(usize, f64)>().enumerate() {
            let (n, v) = rec?;
            if n != i {
                return Err(Error::InvalidParameter(format!(
                    "row {i} has index {n}, expected {i}"
                )));
            }
            values.push(v);
        }
        Self::new(values)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Compensated (Neumaier) summation.
fn neumaier(it: impl Iterator<Item = f64>) -> f64 {
    let mut acc = Kahan::default();
    for v in it {
        acc.add(v);
    }
    acc.value()
}

#[derive(Default, Clone, Copy)]
struct Kahan {
    sum: f64,
    comp: f64,
}

impl Kahan {
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Result of [`discrete_maximal`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiscretePoint {
    pub value: f64,
    /// Smallest maximizing radius; `radius_limit` when only the mean (the
    /// limit of ever-longer windows) beats every scanned window.
    pub r: usize,
    pub limit_only: bool,
}

/// Ties closer than this, relative to `max(1, ‖f‖∞)`, count as equal.
pub const TIE_TOL: f64 = 1e-12;

/// `R_max = 4P`.
pub fn radius_limit(f: &LatticeSignal) -> usize {
    4 * f.period()
}

/// Maximum of the window averages centred at `n` over `r ∈ {0, …, 4P}`,
/// with the period mean as the `r → ∞` comparator.
pub fn discrete_maximal(f: &LatticeSignal, n: i64) -> DiscretePoint {
    let r_max = radius_limit(f);
    let tol = TIE_TOL * f.sup_norm().max(1.0);
    let mut acc = Kahan::default();
    acc.add(f.at(n));
    let mut best = (f.at(n), 0usize);
    for r in 1..=r_max {
        let ri = r as i64;
        acc.add(f.at(n - ri));
        acc.add(f.at(n + ri));
        let avg = acc.value() / (2 * r + 1) as f64;
        if avg > best.0 + tol {
            best = (avg, r);
        }
    }
    let mean = f.mean();
    if mean > best.0 + tol {
        return DiscretePoint {
            value: mean,
            r: r_max,
            limit_only: true,
        };
    }
    DiscretePoint {
        value: best.0,
        r: best.1,
        limit_only: false,
    }
}

/// `(n, r_f(n))` for `n = 0, …, P−1`.
pub fn discrete_length_profile(f: &LatticeSignal) -> Vec<(usize, usize)> {
    (0..f.period())
        .into_par_iter()
        .map(|n| (n, discrete_maximal(f, n as i64).r))
        .collect()
}

/// Sorted distinct radii of a profile.
pub fn value_set(profile: &[(usize, usize)]) -> Vec<usize> {
    let mut v: Vec<usize> = profile.iter().map(|p| p.1).collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// Truncated, periodized `(−1)ⁿ/(|n| + ½)^α`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChengParams {
    pub alpha: f64,
    pub cutoff: usize,
    pub period: usize,
}

impl ChengParams {
    pub fn new(alpha: f64, cutoff: usize, period: usize) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 0.5) {
            return Err(Error::InvalidParameter(format!("alpha {alpha} outside (0, 1/2)")));
        }
        if period < 2 * cutoff + 1 {
            return Err(Error::InvalidParameter(format!(
                "period {period} shorter than 2·cutoff + 1 = {}",
                2 * cutoff + 1
            )));
        }
        Ok(Self {
            alpha,
            cutoff,
            period,
        })
    }
}

/// One period of the example: `f(n)` for `|n| ≤ N`, placed at `n mod P`,
/// zeros in the remaining gap.
pub fn cheng_signal(p: &ChengParams) -> Result<LatticeSignal> {
    let ChengParams {
        alpha,
        cutoff,
        period,
    } = *p;
    let g = |n: i64| {
        let sign = if n.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        sign / (n.unsigned_abs() as f64 + 0.5).powf(alpha)
    };
    let n = cutoff as i64;
    let per = period as i64;
    LatticeSignal::new(
        (0..per)
            .map(|j| {
                if j <= n {
                    g(j)
                } else if j >= per - n {
                    g(j - per)
                } else {
                    0.0
                }
            })
            .collect(),
    )
}

/// A scanned `(cutoff, period)` pair whose signal hit the target set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChengHit {
    pub params: ChengParams,
    pub value_set: Vec<usize>,
    pub negated_value_set: Vec<usize>,
    pub negated_match: bool,
}

/// Outcome of a search over truncations and periods.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChengReport {
    pub alpha: f64,
    pub target: Vec<usize>,
    pub scanned: usize,
    pub hits: Vec<ChengHit>,
    /// How often each value set occurred for `f`, keyed like `{0, 1}`.
    pub value_set_counts: BTreeMap<String, usize>,
    /// Hits for `−f` regardless of whether `f` matched.
    pub negated_hits: Vec<ChengParams>,
}

pub fn format_set(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(|r| r.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Every `(cutoff, period)` with `period ∈ periods(cutoff)` whose signal has
/// discrete length function taking exactly the values in `target`.
pub fn cheng_search_for<P>(
    alpha: f64,
    cutoffs: RangeInclusive<usize>,
    periods: P,
    target: &[usize],
) -> Result<ChengReport>
where
    P: Fn(usize) -> RangeInclusive<usize>,
{
    let mut pairs = Vec::new();
    for n in cutoffs {
        for p in periods(n) {
            pairs.push(ChengParams::new(alpha, n, p)?);
        }
    }
    let mut target: Vec<usize> = target.to_vec();
    target.sort_unstable();
    target.dedup();
    let rows: Vec<(ChengParams, Vec<usize>, Vec<usize>)> = pairs
        .par_iter()
        .map(|p| {
            let f = cheng_signal(p).expect("validated params");
            let vs = value_set(&discrete_length_profile(&f));
            let ns = value_set(&discrete_length_profile(&f.negated()));
            (*p, vs, ns)
        })
        .collect();
    let mut report = ChengReport {
        alpha,
        target: target.clone(),
        scanned: rows.len(),
        hits: Vec::new(),
        value_set_counts: BTreeMap::new(),
        negated_hits: Vec::new(),
    };
    for (p, vs, ns) in rows {
        *report.value_set_counts.entry(format_set(&vs)).or_default() += 1;
        if ns == target {
            report.negated_hits.push(p);
        }
        if vs == target {
            report.hits.push(ChengHit {
                params: p,
                negated_match: ns == target,
                value_set: vs,
                negated_value_set: ns,
            });
        }
    }
    Ok(report)
}

/// [`cheng_search_for`] with target `{0, 2}`.
pub fn cheng_search<P>(alpha: f64, cutoffs: RangeInclusive<usize>, periods: P) -> Result<ChengReport>
where
    P: Fn(usize) -> RangeInclusive<usize>,
{
    cheng_search_for(alpha, cutoffs, periods, &[0, 2])
}

/// `a + b sin(c n + d)` for `n = 0, …, P−1`.
pub fn sine_sample(p: &SineParams, period: usize) -> Result<LatticeSignal> {
    LatticeSignal::new((0..period).map(|n| p.evaluate(n as f64)).collect())
}

/// Sine family member with frequency `2πq/P`, so that its samples repeat
/// exactly with period `P`.
pub fn rational_sine(a: f64, b: f64, q: usize, period: usize, d: f64) -> Result<(SineParams, LatticeSignal)> {
    if q == 0 || period == 0 {
        return Err(Error::InvalidParameter("need q ≥ 1 and P ≥ 1".into()));
    }
    let p = SineParams::new(a, b, TAU * q as f64 / period as f64, d)?;
    let sig = sine_sample(&p, period)?;
    Ok((p, sig))
}

/// Coarse frequency grid for [`sine_distance`].
const C_GRID: usize = 256;

/// Minimax fit of `a + β₁ sin(cn) + β₂ cos(cn)` at fixed `c`:
/// minimise `t` subject to `|f(n) − fit(n)| ≤ t` for every sample.
fn fit_at(f: &LatticeSignal, c: f64) -> Result<(f64, f64, f64, f64)> {
    let mut lp = Problem::new(OptimizationDirection::Minimize);
    let free = (f64::NEG_INFINITY, f64::INFINITY);
    let a = lp.add_var(0.0, free);
    let b1 = lp.add_var(0.0, free);
    let b2 = lp.add_var(0.0, free);
    let t = lp.add_var(1.0, (0.0, f64::INFINITY));
    for (n, &y) in f.values().iter().enumerate() {
        let (s, co) = (c * n as f64).sin_cos();
        lp.add_constraint([(a, 1.0), (b1, s), (b2, co), (t, 1.0)], ComparisonOp::Ge, y);
        lp.add_constraint([(a, 1.0), (b1, s), (b2, co), (t, -1.0)], ComparisonOp::Le, y);
    }
    let sol = lp
        .solve()
        .map_err(|e| Error::Solver(e.to_string()))?
        .into_solution()
        .map_err(|_| Error::Solver("solve interrupted".into()))?;
    let (av, p, q) = (sol.var_value(a), sol.var_value(b1), sol.var_value(b2));
    // report the achieved sup distance rather than the solver's objective
    let dist = f
        .values()
        .iter()
        .enumerate()
        .map(|(n, &y)| {
            let (s, co) = (c * n as f64).sin_cos();
            (y - av - p * s - q * co).abs()
        })
        .fold(0.0, f64::max);
    Ok((dist, av, p, q))
}

/// Upper bound on `inf_{a,b,c,d} sup_n |f(n) − a − b sin(cn + d)|`.
///
/// For fixed `c` the problem is linear in `(a, b cos d, b sin d)` and is
/// solved exactly as a linear program; the frequency is scanned over
/// `(0, π]` and the best cell refined by golden section.
pub fn sine_distance(f: &LatticeSignal) -> Result<(f64, SineParams)> {
    if f.period() < 4 {
        return Err(Error::DegenerateSignal(f.period()));
    }
    let cs: Vec<f64> = (1..=C_GRID).map(|i| PI * i as f64 / C_GRID as f64).collect();
    let fits: Vec<(f64, f64, f64, f64)> = cs
        .par_iter()
        .map(|&c| fit_at(f, c))
        .collect::<Result<_>>()?;
    let (ib, _) = fits
        .iter()
        .enumerate()
        .min_by(|x, y| x.1 .0.total_cmp(&y.1 .0))
        .expect("nonempty grid");
    let mut best = (cs[ib], fits[ib]);
    let lo = if ib == 0 { 0.5 * cs[0] } else { cs[ib - 1] };
    let hi = cs[(ib + 1).min(C_GRID - 1)];
    if hi > lo {
        let (c, d) = golden_min(|c| fit_at(f, c).map(|r| r.0).unwrap_or(f64::INFINITY), lo, hi, 40);
        if d < best.1 .0 {
            best = (c, fit_at(f, c)?);
        }
    }
    let (c, (dist, a, b1, b2)) = best;
    let b = b1.hypot(b2);
    let d = b2.atan2(b1);
    Ok((dist, SineParams::new(a, b, c, d)?))
}

/// `max_n |f(n+1) − f(n)| / ‖f‖∞` over one period, wrapping around.
pub fn smoothness_epsilon(f: &LatticeSignal) -> Result<f64> {
    let norm = f.sup_norm();
    if norm == 0.0 {
        return Err(Error::ZeroSignal);
    }
    let p = f.period() as i64;
    let jump = (0..p)
        .map(|n| (f.at(n + 1) - f.at(n)).abs())
        .fold(0.0, f64::max);
    Ok(jump / norm)
}

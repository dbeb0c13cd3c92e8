//! Seeded random families used by the experiments and the test suites.
//! Identical seeds give identical corpora on every platform.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dde::bump;
use crate::error::Result;
use crate::lattice::{rational_sine, LatticeSignal};
use crate::periodic::{BlackBox, FourierSeries, FunctionHandle, Mode, SineParams};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn signed(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    let m = rng.random_range(lo..=hi);
    if rng.random_bool(0.5) {
        m
    } else {
        -m
    }
}

/// `a + b sin(cx + d)` with `|b| ∈ [0.1, 3]`, `c ∈ {1, 2, 3}`,
/// `a ∈ [−2, 2]`, `d ∈ [0, 2π)`.
pub fn sine_corpus(seed: u64, n: usize) -> Vec<SineParams> {
    let mut r = rng(seed);
    (0..n)
        .map(|_| {
            let a = r.random_range(-2.0..=2.0);
            let b = signed(&mut r, 0.1, 3.0);
            let c = r.random_range(1..=3) as f64;
            let d = r.random_range(0.0..TAU);
            SineParams::new(a, b, c, d).expect("c is nonzero")
        })
        .collect()
}

/// Two distinct modes `k₁ < k₂` from `{1, 2, 3}` with amplitudes in
/// `[0.1, 3]`, uniform phases and mean in `[−1, 1]`.
pub fn two_mode_corpus(seed: u64, n: usize) -> Vec<FourierSeries> {
    let mut r = rng(seed);
    (0..n)
        .map(|_| {
            let k1 = r.random_range(1..=2u32);
            let k2 = r.random_range(k1 + 1..=3u32);
            let mean = r.random_range(-1.0..=1.0);
            let mut mode = |k: u32| {
                let amp = r.random_range(0.1..=3.0);
                let phase: f64 = r.random_range(0.0..TAU);
                Mode::new(k, amp * phase.cos(), amp * phase.sin())
            };
            let m1 = mode(k1);
            let m2 = mode(k2);
            FourierSeries::new(mean, vec![m1, m2]).expect("valid modes")
        })
        .collect()
}

/// `φ''` for the bump `φ(t) = exp(−1/(t(1−t)))`.
fn bump_second(t: f64) -> f64 {
    if t <= 0.0 || t >= 1.0 {
        return 0.0;
    }
    let w = t * (1.0 - t);
    let wp = 1.0 - 2.0 * t;
    let phi = (-1.0 / w).exp();
    phi * (wp * wp * (1.0 - 2.0 * w) - 2.0 * w * w) / (w * w * w * w)
}

/// `x ↦ a φ'(b x)` on `[0, 1]`, mean zero for `b ≥ 1`.
pub fn bump_derivative(a: f64, b: f64) -> FunctionHandle {
    BlackBox::new(format!("{a}*phi'({b}x)"), 1.0, move |x| a * bump(b * x).1)
        .with_derivative(move |x| a * b * bump_second(b * x))
        .into()
}

/// `sin(Nπx)` as a series of period `2/N`.
pub fn sin_unit(n: u32) -> FunctionHandle {
    FourierSeries::with_period(0.0, vec![Mode::new(1, 1.0, 0.0)], 2.0 / n as f64)
        .expect("positive period")
        .into()
}

/// Trigonometric polynomials of period 1 and bump derivatives `a φ'(bx)`,
/// `n_trig + n_bump` functions in all.
pub fn poincare_corpus(seed: u64, n_trig: usize, n_bump: usize) -> Vec<(String, FunctionHandle)> {
    let mut r = rng(seed);
    let mut out = Vec::with_capacity(n_trig + n_bump);
    for i in 0..n_trig {
        let n_modes = r.random_range(1..=3usize);
        let mut ks: Vec<u32> = Vec::new();
        while ks.len() < n_modes {
            let k = r.random_range(1..=6u32);
            if !ks.contains(&k) {
                ks.push(k);
            }
        }
        ks.sort_unstable();
        let modes: Vec<Mode> = ks
            .iter()
            .map(|&k| Mode::new(k, r.random_range(-1.0..=1.0), r.random_range(-1.0..=1.0)))
            .collect();
        let mean = r.random_range(-1.0..=1.0);
        let f = FourierSeries::with_period(mean, modes, 1.0).expect("valid modes");
        out.push((format!("trig{i}"), f.into()));
    }
    for i in 0..n_bump {
        let a = r.random_range(0.5..=3.0);
        let b = r.random_range(1.0..=8.0);
        out.push((format!("bump{i}"), bump_derivative(a, b)));
    }
    out
}

/// Parameters of one exactly periodic sampled sine.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LatticeSineDraw {
    pub a: f64,
    pub b: f64,
    pub q: usize,
    pub period: usize,
    pub d: f64,
}

impl LatticeSineDraw {
    pub fn signal(&self) -> Result<LatticeSignal> {
        Ok(rational_sine(self.a, self.b, self.q, self.period, self.d)?.1)
    }
}

/// Periods in `[16, 96]`, frequencies `2πq/P` with `1 ≤ q < P/2`, phases
/// uniform.
pub fn lattice_sine_corpus(seed: u64, n: usize) -> Vec<LatticeSineDraw> {
    let mut r = rng(seed);
    (0..n)
        .map(|_| {
            let period = r.random_range(16..=96usize);
            let q = r.random_range(1..period.div_ceil(2));
            LatticeSineDraw {
                a: r.random_range(-2.0..=2.0),
                b: signed(&mut r, 0.5, 3.0),
                q,
                period,
                d: r.random_range(0.0..TAU),
            }
        })
        .collect()
}

//! Small perturbations of a sine move the measured quantities by amounts
//! proportional to the perturbation.

use maxrigidity::averaging::{criticality_residual, period_grid, AveragingConfig};
use maxrigidity::lattice::{rational_sine, sine_distance};
use maxrigidity::rigidity::tan_fixed_point;
use maxrigidity::{FourierSeries, FunctionHandle, Mode};

#[test]
fn criticality_residual_is_linear_in_perturbation() {
    let g = tan_fixed_point(1).unwrap().value;
    let xs = period_grid(std::f64::consts::TAU, 256);
    let cfg = AveragingConfig::default();
    let mut prev = None;
    for eps in [1e-2, 1e-3, 1e-4] {
        let f: FunctionHandle = FourierSeries::new(0.0, vec![Mode::new(1, 1.0, 0.0), Mode::new(3, eps, 0.0)])
            .unwrap()
            .into();
        let r = criticality_residual(&f, g, &xs, &cfg).unwrap();
        assert!(r > 0.0 && r <= eps);
        if let Some(p) = prev {
            let ratio: f64 = p / r;
            assert!((ratio - 10.0).abs() < 0.1, "{ratio}");
        }
        prev = Some(r);
    }
}

#[test]
fn sine_distance_is_bounded_by_perturbation() {
    let (_, base) = rational_sine(0.3, 1.5, 2, 32, 0.9).unwrap();
    for eps in [1e-1, 1e-2, 1e-3] {
        let f = base.map(|n, v| v + eps * (((5 * n) as f64) * 0.37).cos()).unwrap();
        let (d, _) = sine_distance(&f).unwrap();
        assert!(d <= eps * (1.0 + 1e-6), "eps {eps}: {d}");
        assert!(d >= eps * 0.05, "eps {eps}: {d}");
    }
}

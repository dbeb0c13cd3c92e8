//! The centered average of a trigonometric series is the series with each
//! mode scaled by `sinc(ωr)`; compare that route with direct quadrature.

use maxrigidity::averaging::{average_by_quadrature, multiplier_average, sinc, AveragingConfig};
use maxrigidity::{FourierSeries, FunctionHandle, Mode};

fn main() -> maxrigidity::Result<()> {
    let s = FourierSeries::new(0.2, vec![Mode::new(1, 1.0, -0.4), Mode::new(2, 0.3, 0.5)])?;
    let f: FunctionHandle = s.clone().into();
    let cfg = AveragingConfig::default();
    let x = 0.8;
    println!("{:>6} {:>18} {:>18} {:>10}", "r", "multiplier", "quadrature", "diff");
    for r in [0.1, 0.5, 1.0, 2.0, 4.4934, 10.0] {
        let a = multiplier_average(&s, x, r)?;
        let b = average_by_quadrature(&f, x, r, &cfg)?;
        println!("{r:>6} {a:>18.12} {b:>18.12} {:>10.2e}", (a - b).abs());
    }
    println!("sinc(4.4934) = {:.3e}", sinc(4.4934));
    Ok(())
}

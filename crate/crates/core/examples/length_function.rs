//! The length function `r_f(x)`: the least radius at which the centered
//! maximal function is attained. Sines take exactly two values.

use maxrigidity::maximal::{two_valued_check, uncentered_length, MaximalConfig};
use maxrigidity::{FourierSeries, FunctionHandle, Mode, SineParams};

fn main() -> maxrigidity::Result<()> {
    let cfg = MaximalConfig {
        cluster_tol: 1e-3,
        ..MaximalConfig::default()
    };
    let sine: FunctionHandle = SineParams::new(1.0, 0.3, 2.0, 0.7)?.into();
    let two_mode: FunctionHandle = FourierSeries::new(0.0, vec![Mode::new(1, 1.0, 0.0), Mode::new(2, 0.0, 0.6)])?.into();

    for f in [&sine, &two_mode] {
        let rep = two_valued_check(f, &cfg, 64)?;
        println!("{}", f.describe());
        let head: Vec<String> = rep.value_set.iter().take(4).map(|v| format!("{v:.4}")).collect();
        println!(
            "  two-valued: {}  {} distinct values, first {}",
            rep.two_valued,
            rep.value_set.len(),
            head.join(", ")
        );
    }

    // The uncentered interval length on [0, 1].
    let g = |x: f64| (4.0 * std::f64::consts::PI * x).sin();
    for x in [0.125, 0.375, 0.6] {
        println!("r*(x = {x}) = {:.5}", uncentered_length(g, x, &cfg)?);
    }
    Ok(())
}

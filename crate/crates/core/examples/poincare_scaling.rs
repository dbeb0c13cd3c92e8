//! Both sides of the Poincaré-type inequality for the uncentered maximal
//! length, and how they scale for `sin(Nπx)`.

use maxrigidity::corpus::{bump_derivative, sin_unit};
use maxrigidity::maximal::MaximalConfig;
use maxrigidity::poincare::{loglog_slope, poincare_report};

fn main() -> maxrigidity::Result<()> {
    let cfg = MaximalConfig::default();
    let ns = [2u32, 4, 8, 16, 32];
    let mut rs = Vec::new();
    println!("{:>4} {:>10} {:>10} {:>10} {:>8}", "N", "lhs", "sup r*", "tv", "ratio");
    for &n in &ns {
        let r = poincare_report(&sin_unit(n), 256, &cfg)?;
        println!("{n:>4} {:>10.4} {:>10.4} {:>10.3} {:>8.3}", r.lhs, r.r_star_sup, r.tv, r.ratio);
        rs.push(r.r_star_sup);
    }
    let xs: Vec<f64> = ns.iter().map(|&n| n as f64).collect();
    println!("log-log slope of sup r* against N: {:.3}", loglog_slope(&xs, &rs)?);

    let r = poincare_report(&bump_derivative(2.0, 4.0), 256, &cfg)?;
    println!("2 phi'(4x): lhs {:.4e}, ratio {:.3}", r.lhs, r.ratio);
    Ok(())
}

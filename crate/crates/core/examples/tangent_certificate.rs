//! Exact tangent polynomials `tan(nx) = P_n(tan x) / Q_n(tan x)` and the
//! certificate that `n tan(mx) − m tan(nx)` is not identically zero.

use maxrigidity::rigidity::{certificate, certificate_report, tangent_poly_pair};

fn main() -> maxrigidity::Result<()> {
    for n in 1..=5 {
        let (p, q) = tangent_poly_pair(n)?;
        println!("n = {n}: P = {p}   Q = {q}");
    }
    let c = certificate(2, 5)?;
    println!("R_(2,5) = {}", c.poly);
    println!("nm^3 - mn^3 = {}, taylor agrees: {}", c.third_order, c.taylor_agrees);
    let r = certificate_report(1, 3, 50.0, 100_000)?;
    println!(
        "(1, 3): degree {:?}, {} nonzero coefficients, min simultaneous residual {:.3e}",
        r.degree, r.nonzero_coeff_count, r.min_scan_residual
    );
    Ok(())
}

//! Positive solutions of `tan t = t` and checks that they are not rational
//! multiples of `π` with small denominators.

use maxrigidity::rigidity::{rational_pi_independence_check, tan_fixed_points};

fn main() -> maxrigidity::Result<()> {
    for fp in tan_fixed_points(10)? {
        let indep = rational_pi_independence_check(fp.index, 1000)?;
        println!(
            "m = {:>2}  gamma = {:.15}  residual = {:.1e}  not p/q·pi (q <= 1000): {indep}",
            fp.index, fp.value, fp.residual
        );
    }
    Ok(())
}

//! Extending a history segment through `f'(x + γ) + f'(x − γ) =
//! (f(x + γ) − f(x − γ)) / γ` by the method of steps.

use maxrigidity::dde::{bump_history, extension_error, periodicity_score, DdeSolution};
use maxrigidity::rigidity::tan_fixed_point;
use maxrigidity::{FunctionHandle, SineParams};

fn main() -> maxrigidity::Result<()> {
    let gamma = tan_fixed_point(1)?.value;
    let sine: FunctionHandle = SineParams::new(0.0, 1.0, 1.0, 0.3)?.into();

    let sol = DdeSolution::from_function(&sine, gamma, 0.0, 2048)?.extend(2 * 2048)?;
    println!("sine history: periodicity score {:.2e}", periodicity_score(&sol, 2.0 * gamma)?);
    for n in [512, 1024, 2048] {
        println!("  n_window {n}: max error vs sin {:.3e}", extension_error(&sine, gamma, 0.0, n, 2 * n)?);
    }

    let bump = bump_history(gamma, 2048, 1.0)?.extend(2 * 2048)?;
    println!("bump history: periodicity score {:.3}", periodicity_score(&bump, 2.0 * gamma)?);
    println!("bump extension sup norm {:.3}", bump.sup_norm());
    Ok(())
}

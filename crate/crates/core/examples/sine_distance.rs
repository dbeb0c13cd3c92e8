//! Distance from a periodic sequence to the sampled sine family, as a
//! minimax fit.

use maxrigidity::lattice::{rational_sine, sine_distance, smoothness_epsilon, LatticeSignal};

fn main() -> maxrigidity::Result<()> {
    let (_, exact) = rational_sine(0.5, 2.0, 2, 20, 1.1)?;
    let noisy = exact.map(|n, v| v + 0.01 * ((7 * n) as f64).sin())?;
    let square = LatticeSignal::new((0..20).map(|n| if n < 10 { 1.0 } else { -1.0 }).collect())?;
    for (name, f) in [("exact sine", &exact), ("perturbed sine", &noisy), ("square", &square)] {
        let (d, p) = sine_distance(f)?;
        println!(
            "{name:<15} distance {d:.3e}  eps {:.3}  fit a={:.3} b={:.3} c={:.4}",
            smoothness_epsilon(f)?,
            p.a,
            p.b,
            p.c
        );
    }
    Ok(())
}

//! Discrete maximal function on periodic sequences and a search over
//! periodized truncations of the lacunary series `Σ 2^{−nα} e^{i2ⁿx}`.

use maxrigidity::lattice::{
    cheng_search, cheng_signal, discrete_length_profile, discrete_maximal, format_set, rational_sine, value_set,
    ChengParams,
};

fn main() -> maxrigidity::Result<()> {
    let (_, f) = rational_sine(0.0, 1.0, 3, 24, 0.4)?;
    let prof = discrete_length_profile(&f);
    println!("sampled sine, P = 24: r_f values {}", format_set(&value_set(&prof)));
    let p = discrete_maximal(&f, 5);
    println!("  at n = 5: max average {:.6} at r = {}", p.value, p.r);

    let sig = cheng_signal(&ChengParams::new(1.0 / 3.0, 6, 13)?)?;
    println!("cheng N = 6, P = 13: r_f values {}", format_set(&value_set(&discrete_length_profile(&sig))));

    let rep = cheng_search(1.0 / 3.0, 4..=16, |n| (2 * n + 1)..=(3 * n))?;
    println!("scanned {} pairs, {} with values {}", rep.scanned, rep.hits.len(), format_set(&rep.target));
    let mut counts: Vec<_> = rep.value_set_counts.iter().collect();
    counts.sort_by(|a, b| b.1.cmp(a.1).then(a.0.cmp(b.0)));
    for (set, count) in counts.into_iter().take(5) {
        println!("  {set}: {count}");
    }
    Ok(())
}

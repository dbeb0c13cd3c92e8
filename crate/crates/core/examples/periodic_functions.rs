//! Building periodic functions: trigonometric series, the sine family and
//! black boxes, plus their JSON form.

use maxrigidity::{BlackBox, FourierSeries, FunctionHandle, Mode, SineParams};

fn main() -> maxrigidity::Result<()> {
    let series = FourierSeries::new(0.5, vec![Mode::new(1, 1.0, 0.0), Mode::new(3, 0.0, 0.25)])?;
    let sine = SineParams::new(1.0, 0.3, 2.0, 0.7)?;
    let bb = BlackBox::new("|sin x|", std::f64::consts::PI, |x: f64| x.sin().abs());

    let handles: Vec<FunctionHandle> = vec![series.clone().into(), sine.into(), bb.into()];
    for f in &handles {
        println!("{:<40} period {:.4}  f(1) = {:+.6}", f.describe(), f.period(), f.evaluate(1.0));
    }

    // A single active mode collapses to the sine family.
    let one = FourierSeries::new(2.0, vec![Mode::new(2, 0.0, 3.0)])?;
    println!("single mode as sine: {:?}", one.to_sine_params()?);

    let json = serde_json::to_string(&FunctionHandle::from(sine))?;
    println!("json: {json}");
    let back: FunctionHandle = serde_json::from_str(&json)?;
    println!("round trip f(0.3) = {:.12}", back.evaluate(0.3));
    Ok(())
}

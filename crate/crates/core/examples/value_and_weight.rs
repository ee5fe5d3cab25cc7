// Value function and probability weighting curves.
//
// `cargo run --example value_and_weight`

use perceptual_qos::{value, weight, Mode, ReferencePoint, Result, ValueParams, WeightParams};

pub fn run_example() -> Result<()> {
    let vp = ValueParams::new(0.5, 1.0, 2.0, Mode::Strict)?;
    let x0 = ReferencePoint::new(5.0)?;

    println!("x,v(x)");
    for x in [0.0, 1.0, 2.5, 4.0, 5.0, 6.0, 7.5, 9.0, 10.0] {
        println!("{x},{:.6}", value(x, x0, &vp));
    }

    // losses loom larger than gains of the same size
    let delta = 2.0;
    let gain = value(5.0 + delta, x0, &vp);
    let loss = value(5.0 - delta, x0, &vp);
    println!("v(+{delta}) = {gain:.4}, v(-{delta}) = {loss:.4}");
    assert!(gain < -loss);

    let e = (-1.0f64).exp();
    println!("p,w(p) theta=0.5,w(p) theta=0.8");
    let w05 = WeightParams::new(1.0, 0.5, Mode::Strict)?;
    let w08 = WeightParams::new(1.0, 0.8, Mode::Strict)?;
    for p in [0.01, 0.05, 0.1, 0.2, e, 0.5, 0.8, 0.95, 0.99] {
        println!("{p:.4},{:.6},{:.6}", weight(p, &w05)?, weight(p, &w08)?);
    }
    assert!((weight(e, &w05)? - e).abs() < 1e-12);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}

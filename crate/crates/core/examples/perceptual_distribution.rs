// Exponential channel gain seen through the weighting function.
//
// `cargo run --example perceptual_distribution`

use perceptual_qos::{
    BaseDistribution, ExponentialGain, Mode, PerceptualDistribution, Result, WeightParams,
};

pub fn run_example() -> Result<()> {
    let gain = ExponentialGain::normalized();
    let pd = PerceptualDistribution::new(gain, WeightParams::new(1.0, 0.5, Mode::Strict)?);

    println!("s,F(s),pcdf(s),f(s),ppdf(s)");
    for s in [0.01, 0.1, 0.5, 1.0, 2.0, 4.0, 8.0] {
        println!(
            "{s},{:.6},{:.6},{:.6},{:.6}",
            gain.cdf(s),
            pd.pcdf(s),
            gain.pdf(s),
            pd.ppdf(s)?
        );
    }

    // inverse-transform draws land back on the perceptual CDF
    for u in [0.1, 0.5, 0.9] {
        let s = pd.sample(u)?;
        println!("u={u} -> s={s:.6} pcdf={:.6}", pd.pcdf(s));
        assert!((pd.pcdf(s) - u).abs() < 1e-10);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}

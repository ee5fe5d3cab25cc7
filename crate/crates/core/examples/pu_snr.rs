// Perceptual utility of SNR against transmit power.
//
// `cargo run --example pu_snr`

use perceptual_qos::{
    pu_snr, ExponentialGain, Integrator, LinkBudget, Mode, ReferencePoint, Result, ValueParams,
    WeightParams,
};

pub fn run_example() -> Result<()> {
    let vp = ValueParams::new(0.5, 1.0, 2.0, Mode::Strict)?;
    let gamma0 = ReferencePoint::new(4.0)?;
    let integrator = Integrator::default();

    println!("pt_over_n0,pu theta=0.5,pu theta=0.8,classical");
    for p in [0.0, 1.0, 10.0, 100.0, 1000.0] {
        let link = LinkBudget::new(p, ExponentialGain::normalized())?;
        let a = pu_snr(
            &link,
            gamma0,
            &vp,
            &WeightParams::new(1.0, 0.5, Mode::Strict)?,
            &integrator,
        )?;
        let b = pu_snr(
            &link,
            gamma0,
            &vp,
            &WeightParams::new(1.0, 0.8, Mode::Strict)?,
            &integrator,
        )?;
        let c = pu_snr(
            &link,
            ReferencePoint::zero(),
            &ValueParams::linear(),
            &WeightParams::identity(),
            &integrator,
        )?;
        println!("{p},{:.6},{:.6},{:.6}", a.value, b.value, c.value);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}

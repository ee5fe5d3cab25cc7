// Quadrature against the Monte Carlo oracle.
//
// `cargo run --release --example oracle_cross_check`

use perceptual_qos::metrics::snr_metric;
use perceptual_qos::{
    mc_pop, mc_pu, pop, pu_snr, ExponentialGain, Integrator, LinkBudget, McConfig, Mode,
    OutageSpec, PerceptualDistribution, ReferencePoint, Result, ValueParams, WeightParams,
};

pub fn run_example() -> Result<()> {
    let vp = ValueParams::new(0.5, 1.0, 2.0, Mode::Strict)?;
    let wp = WeightParams::new(1.0, 0.65, Mode::Strict)?;
    let gamma0 = ReferencePoint::new(4.0)?;
    let cfg = McConfig::new(200_000, 7)?;

    println!("pt_over_n0,quad,mc,mc_se,z");
    for p in [1.0, 10.0, 100.0] {
        let link = LinkBudget::new(p, ExponentialGain::normalized())?;
        let q = pu_snr(&link, gamma0, &vp, &wp, &Integrator::default())?;
        let pd = PerceptualDistribution::new(*link.channel(), wp);
        let mc = mc_pu(&snr_metric(&link, gamma0), &pd, &vp, &cfg)?;
        let z = (q.value - mc.mean) / mc.std_error;
        println!(
            "{p},{:.6},{:.6},{:.6},{z:.2}",
            q.value, mc.mean, mc.std_error
        );
    }

    let link = LinkBudget::new(10.0, ExponentialGain::normalized())?;
    let spec = OutageSpec::new(1.0)?;
    let mc = mc_pop(&link, &spec, &wp, &cfg)?;
    println!(
        "pop: exact {:.6}, oracle {:.6} +- {:.6} ({})",
        pop(&link, &spec, &wp),
        mc.mean,
        mc.std_error,
        mc.rng
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}

// Perceptual utility of rate, plus a custom metric through `pu_composite`.
//
// `cargo run --example pu_rate`

use perceptual_qos::metrics::CompositeMetric;
use perceptual_qos::{
    pu_composite, pu_rate, ExponentialGain, Integrator, LinkBudget, Mode, PerceptualDistribution,
    ReferencePoint, Result, ValueParams, WeightParams,
};

pub fn run_example() -> Result<()> {
    let vp = ValueParams::new(0.5, 1.0, 2.0, Mode::Strict)?;
    let wp = WeightParams::new(1.0, 0.8, Mode::Strict)?;
    let psi0 = ReferencePoint::new(4.0)?;
    let integrator = Integrator::default();

    println!("pt_over_n0,pu_rate,err,n_eval");
    let mut last = None;
    for p in [1.0, 10.0, 100.0, 400.0, 1000.0] {
        let link = LinkBudget::new(p, ExponentialGain::normalized())?;
        let r = pu_rate(&link, psi0, &vp, &wp, &integrator)?;
        println!("{p},{:.6},{:.1e},{}", r.value, r.abs_error, r.evaluations);
        last = Some((p, r.value));
    }
    if let Some((p, v)) = last {
        println!("at {p} the rate utility is still only {v:.3}");
    }

    // any increasing map of the gain works; the crossing is found by bisection
    let link = LinkBudget::new(100.0, ExponentialGain::normalized())?;
    let metric =
        CompositeMetric::with_bisection(|g: f64| link.rate(g).sqrt(), ReferencePoint::new(2.0)?);
    let pd = PerceptualDistribution::new(*link.channel(), wp);
    let r = pu_composite(&metric, &pd, &vp, &integrator)?;
    println!(
        "sqrt-rate utility {:.6} (crossing gain {:.6})",
        r.value,
        metric.crossing()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}

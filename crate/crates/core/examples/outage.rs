// Objective and perceived outage probability.
//
// `cargo run --example outage`

use perceptual_qos::{
    outage_probability, pop, ExponentialGain, LinkBudget, Mode, OutageSpec, Result, WeightParams,
};

pub fn run_example() -> Result<()> {
    let spec = OutageSpec::new(1.0)?;
    let wp = WeightParams::new(1.0, 0.5, Mode::Strict)?;

    println!("pt_over_n0,outage,perceived");
    for p in [1.0, 2.0, 5.0, 10.0, 100.0, 1000.0] {
        let link = LinkBudget::new(p, ExponentialGain::normalized())?;
        let objective = outage_probability(&link, &spec);
        let perceived = pop(&link, &spec, &wp);
        println!("{p},{objective:.6},{perceived:.6}");
    }
    // rare outages are overweighted
    let link = LinkBudget::new(1000.0, ExponentialGain::normalized())?;
    assert!(pop(&link, &spec, &wp) > outage_probability(&link, &spec));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}

// Sum-of-paths channel against the exponential gain law.
//
// `cargo run --release --example channel_simulation`

use perceptual_qos::channel::{draw_channel, sup_distance, MultipathConfig};
use perceptual_qos::{BaseDistribution, ExponentialGain, Result};

pub fn run_example() -> Result<()> {
    let law = ExponentialGain::normalized();
    println!("k_paths,mean_gain,sup_distance");
    for k in [1, 2, 4, 16, 64] {
        let cfg = MultipathConfig::normalized(k, 42)?;
        let gains: Vec<f64> = draw_channel(&cfg, 100_000)
            .iter()
            .map(|h| h.norm_sqr())
            .collect();
        let mean = gains.iter().sum::<f64>() / gains.len() as f64;
        let d = sup_distance(&gains, |g| law.cdf(g));
        println!("{k},{mean:.4},{d:.4}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}

mod common;

use common::prelec;
use perceptual_qos::metrics::{snr_metric, CompositeMetric};
use perceptual_qos::{
    mc_pop, mc_pu, pu_snr, value, ExponentialGain, Integrator, LinkBudget, McConfig, Mode,
    OutageSpec, PerceptualDistribution, ReferencePoint, ValueParams, WeightParams,
};

fn link(p: f64) -> LinkBudget {
    LinkBudget::new(p, ExponentialGain::normalized()).unwrap()
}

fn classical(p: f64, samples: usize, seed: u64) -> perceptual_qos::McEstimate {
    let l = link(p);
    let pd = PerceptualDistribution::new(*l.channel(), WeightParams::identity());
    let cfg = McConfig::new(samples, seed).unwrap();
    let metric = snr_metric(&l, ReferencePoint::zero());
    mc_pu(&metric, &pd, &ValueParams::linear(), &cfg).unwrap()
}

#[test]
fn classical_mean_snr() {
    let mc = classical(10.0, 1_000_000, 3);
    assert!((mc.mean - 10.0).abs() <= 3.0 * mc.std_error, "{mc:?}");
    assert_eq!(mc.samples, 1_000_000);
}

#[test]
fn constant_metric_is_exact() {
    let vp = ValueParams::default();
    let x0 = ReferencePoint::new(4.0).unwrap();
    let metric = CompositeMetric::with_bisection(|_g: f64| 6.0, x0);
    let pd = PerceptualDistribution::new(ExponentialGain::normalized(), WeightParams::default());
    let mc = mc_pu(&metric, &pd, &vp, &McConfig::new(1000, 1).unwrap()).unwrap();
    assert_eq!(mc.mean, value(6.0, x0, &vp));
    assert_eq!(mc.std_error, 0.0);
}

#[test]
fn strict_estimate_matches_quadrature() {
    let l = link(10.0);
    let vp = ValueParams::new(0.5, 1.0, 2.0, Mode::Strict).unwrap();
    let wp = WeightParams::new(1.0, 0.8, Mode::Strict).unwrap();
    let x0 = ReferencePoint::new(4.0).unwrap();
    let q = pu_snr(&l, x0, &vp, &wp, &Integrator::default()).unwrap();
    let pd = PerceptualDistribution::new(*l.channel(), wp);
    let mc = mc_pu(
        &snr_metric(&l, x0),
        &pd,
        &vp,
        &McConfig::new(1_000_000, 5).unwrap(),
    )
    .unwrap();
    assert!(
        (q.value - mc.mean).abs() <= 3.0 * mc.std_error,
        "{q:?} {mc:?}"
    );
}

#[test]
fn standard_error_shrinks_tenfold() {
    let small = classical(10.0, 10_000, 9);
    let large = classical(10.0, 1_000_000, 9);
    let ratio = small.std_error / large.std_error;
    assert!((7.0..=13.0).contains(&ratio), "ratio {ratio}");
}

#[test]
fn unbiased_over_fifty_seeds() {
    let covered = (0..50)
        .filter(|&seed| {
            let mc = classical(10.0, 100_000, 1000 + seed);
            (mc.mean - 10.0).abs() <= 3.0 * mc.std_error
        })
        .count();
    assert!(covered >= 48, "{covered} of 50");
}

#[test]
fn reproducible_regardless_of_thread_count() {
    let a = classical(10.0, 300_000, 17);
    let b = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(|| classical(10.0, 300_000, 17));
    assert_eq!(a.mean.to_bits(), b.mean.to_bits());
    assert_eq!(a.std_error.to_bits(), b.std_error.to_bits());
    let c = classical(10.0, 300_000, 18);
    assert_ne!(a.mean.to_bits(), c.mean.to_bits());
}

#[test]
fn perceived_outage_examples() {
    let spec = OutageSpec::new(1.0).unwrap();
    let cfg = McConfig::new(1_000_000, 21).unwrap();

    let mc = mc_pop(&link(1.0), &spec, &WeightParams::identity(), &cfg).unwrap();
    let exact = 1.0 - (-1.0f64).exp();
    assert!((mc.mean - exact).abs() <= 3.0 * mc.std_error, "{mc:?}");

    let wp = WeightParams::new(1.0, 0.5, Mode::Strict).unwrap();
    let mc = mc_pop(&link(1.0), &spec, &wp, &cfg).unwrap();
    let target = prelec(exact, 1.0, 0.5);
    assert!((target - 0.508).abs() < 1e-3);
    assert!((mc.mean - target).abs() <= 3.0 * mc.std_error, "{mc:?}");

    let mc = mc_pop(&link(1e12), &spec, &wp, &cfg).unwrap();
    assert_eq!(mc.mean, 0.0);
}

//! One pass/fail line per acceptance criterion. Runs as a plain binary so the
//! report is always printed.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{ks_distance, prelec, prospect_value};
use perceptual_qos::channel::{gain_samples, MultipathConfig};
use perceptual_qos::metrics::{rate_metric, snr_metric};
use perceptual_qos::quadrature::Integrator;
use perceptual_qos::sweep::{preset, run_scenario};
use perceptual_qos::{
    mc_pu, pop, pu_rate, pu_snr, value, weight, ExponentialGain, LinkBudget, McConfig, Mode,
    OutageSpec, PerceptualDistribution, ReferencePoint, ValueParams, WeightParams,
};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check, Duration);

fn link(p: f64) -> LinkBudget {
    LinkBudget::new(p, ExponentialGain::normalized()).unwrap()
}

fn strict_v(alpha: f64, l2: f64) -> ValueParams {
    ValueParams::new(alpha, 1.0, l2, Mode::Strict).unwrap()
}

fn strict_w(gamma: f64, theta: f64) -> WeightParams {
    WeightParams::new(gamma, theta, Mode::Strict).unwrap()
}

fn r0(x: f64) -> ReferencePoint {
    ReferencePoint::new(x).unwrap()
}

fn zero_power_limit() -> Check {
    let r = pu_snr(
        &link(0.0),
        r0(4.0),
        &strict_v(0.5, 2.0),
        &strict_w(1.0, 0.8),
        &Integrator::default(),
    )
    .map_err(|e| e.to_string())?;
    let err = (r.value + 4.0).abs();
    if err < 1e-8 {
        Ok(format!("pu_snr(0) = {}", r.value))
    } else {
        Err(format!("pu_snr(0) = {}, off by {err:e}", r.value))
    }
}

fn classical_reduction() -> Check {
    let mut worst: f64 = 0.0;
    for p in [1.0, 10.0, 100.0, 1000.0] {
        let r = pu_snr(
            &link(p),
            ReferencePoint::with_mode(0.0, Mode::Permissive).unwrap(),
            &ValueParams::new(1.0, 1.0, 1.0, Mode::Permissive).unwrap(),
            &WeightParams::new(1.0, 1.0, Mode::Permissive).unwrap(),
            &Integrator::default(),
        )
        .map_err(|e| e.to_string())?;
        worst = worst.max(((r.value - p) / p).abs());
    }
    let msg = format!("worst relative error {worst:.2e}");
    if worst < 1e-6 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn oracle_agreement() -> Check {
    let mut snr_pass = 0;
    let mut rate_pass = 0;
    let mut worst_z: f64 = 0.0;
    let mut seed = 0;
    for alpha in [0.3, 0.5, 0.8] {
        for theta in [0.5, 0.65, 0.8] {
            for p in [1.0, 10.0, 100.0] {
                let (vp, wp, l) = (strict_v(alpha, 2.0), strict_w(1.0, theta), link(p));
                let pd = PerceptualDistribution::new(*l.channel(), wp);
                let q = pu_snr(&l, r0(4.0), &vp, &wp, &Integrator::default())
                    .map_err(|e| e.to_string())?;
                seed += 1;
                let cfg = McConfig::new(1_000_000, seed).unwrap();
                let m =
                    mc_pu(&snr_metric(&l, r0(4.0)), &pd, &vp, &cfg).map_err(|e| e.to_string())?;
                let z = (q.value - m.mean).abs() / m.std_error;
                worst_z = worst_z.max(z);
                snr_pass += usize::from(z <= 3.0);

                let q = pu_rate(&l, r0(4.0), &vp, &wp, &Integrator::default())
                    .map_err(|e| e.to_string())?;
                seed += 1;
                let cfg = McConfig::new(1_000_000, seed).unwrap();
                let m =
                    mc_pu(&rate_metric(&l, r0(4.0)), &pd, &vp, &cfg).map_err(|e| e.to_string())?;
                let z = (q.value - m.mean).abs() / m.std_error;
                worst_z = worst_z.max(z);
                rate_pass += usize::from(z <= 3.0);
            }
        }
    }
    let msg =
        format!("pu_snr {snr_pass}/27, pu_rate {rate_pass}/27 within 3 SE (max |z| {worst_z:.2})");
    if snr_pass >= 26 && rate_pass >= 26 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn density_validity() -> Check {
    let sets = [(1.0, 0.5), (1.0, 0.65), (1.0, 0.8), (0.8, 0.9), (1.5, 0.6)];
    let integrator = Integrator::new(1e-11, 100_000).unwrap();
    let mut worst_mass: f64 = 0.0;
    let mut worst_fd: f64 = 0.0;
    for (gamma, theta) in sets {
        let pd = PerceptualDistribution::new(ExponentialGain::normalized(), strict_w(gamma, theta));
        // y = ln s; mass outside [e^-700, e^6] is below 1e-12 for these sets
        let f = |y: f64| {
            let s = y.exp();
            pd.ppdf(s).map_or(0.0, |d| d * s)
        };
        let q = integrator
            .integrate(&f, -700.0, 6.0)
            .map_err(|e| e.to_string())?;
        worst_mass = worst_mass.max((q.value - 1.0).abs());

        for i in 0..20 {
            let s = 0.02 * (250.0f64).powf(i as f64 / 19.0);
            let h = 1e-3 * s;
            let fd = (-pd.pcdf(s + 2.0 * h) + 8.0 * pd.pcdf(s + h) - 8.0 * pd.pcdf(s - h)
                + pd.pcdf(s - 2.0 * h))
                / (12.0 * h);
            let d = pd.ppdf(s).map_err(|e| e.to_string())?;
            worst_fd = worst_fd.max(((d - fd) / d).abs());
        }
    }
    let msg = format!("max |mass - 1| {worst_mass:.2e}, max FD relative error {worst_fd:.2e}");
    if worst_mass < 1e-8 && worst_fd < 1e-5 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn shapes() -> Check {
    let powers = [1.0, 2.0, 5.0, 10.0, 100.0, 1000.0];
    let i = Integrator::default();
    let spec = OutageSpec::new(1.0).unwrap();
    let mut failures = Vec::new();
    for theta in [0.5, 0.8] {
        let (vp, wp) = (strict_v(0.5, 2.0), strict_w(1.0, theta));
        let mut snr = Vec::new();
        let mut rate = Vec::new();
        let mut out = Vec::new();
        for p in powers {
            snr.push(
                pu_snr(&link(p), r0(4.0), &vp, &wp, &i)
                    .map_err(|e| e.to_string())?
                    .value,
            );
            rate.push(
                pu_rate(&link(p), r0(4.0), &vp, &wp, &i)
                    .map_err(|e| e.to_string())?
                    .value,
            );
            out.push(pop(&link(p), &spec, &wp));
        }
        let up = |v: &[f64]| v.windows(2).all(|w| w[1] > w[0]);
        let down = |v: &[f64]| v.windows(2).all(|w| w[1] < w[0]);
        if !up(&snr) {
            failures.push(format!("pu_snr not increasing at theta={theta}"));
        }
        if !up(&rate) {
            failures.push(format!("pu_rate not increasing at theta={theta}"));
        }
        if !down(&out) {
            failures.push(format!("pop not decreasing at theta={theta}"));
        }

        for p in [1.0, 10.0, 100.0] {
            let by_ref: Vec<f64> = [1.0, 4.0, 16.0]
                .iter()
                .map(|&x| pu_snr(&link(p), r0(x), &vp, &wp, &i).unwrap().value)
                .collect();
            let by_ref_rate: Vec<f64> = [1.0, 4.0, 16.0]
                .iter()
                .map(|&x| pu_rate(&link(p), r0(x), &vp, &wp, &i).unwrap().value)
                .collect();
            let by_loss: Vec<f64> = [1.5, 2.0, 3.0]
                .iter()
                .map(|&l2| {
                    pu_snr(&link(p), r0(4.0), &strict_v(0.5, l2), &wp, &i)
                        .unwrap()
                        .value
                })
                .collect();
            if !down(&by_ref) || !down(&by_ref_rate) {
                failures.push(format!("not decreasing in reference at {p}"));
            }
            if !down(&by_loss) {
                failures.push(format!("not decreasing in loss ratio at {p}"));
            }
        }
    }
    if failures.is_empty() {
        Ok("monotone in power, reference and loss ratio at theta 0.5 and 0.8".into())
    } else {
        Err(failures.join("; "))
    }
}

fn prospect_properties() -> Check {
    let vp = strict_v(0.5, 2.0);
    let x0 = r0(5.0);
    for k in 0..25 {
        let delta = 1e-3 * 10f64.powf(6.0 * k as f64 / 24.0);
        let (g, l) = (value(5.0 + delta, x0, &vp), value(5.0 - delta, x0, &vp));
        if g >= -l {
            return Err(format!("loss aversion fails at delta={delta}"));
        }
        // independent closed form
        if (g - prospect_value(5.0 + delta, 5.0, 0.5, 1.0, 2.0)).abs() > 1e-12 * g.abs().max(1.0) {
            return Err(format!("value mismatch at delta={delta}"));
        }
    }
    let e = (-1.0f64).exp();
    let mut worst_fixed: f64 = 0.0;
    for theta in [0.3, 0.5, 0.65, 0.8, 0.95] {
        let wp = strict_w(1.0, theta);
        for k in 1..=50 {
            let p = k as f64 / 51.0;
            let w = weight(p, &wp).map_err(|e| e.to_string())?;
            if (w - prelec(p, 1.0, theta)).abs() > 1e-14 {
                return Err(format!("weight mismatch at p={p}"));
            }
            let ok = if p < e { w > p } else { w < p };
            if !ok {
                return Err(format!("inverse-S fails at p={p}, theta={theta}"));
            }
        }
        worst_fixed = worst_fixed.max((weight(e, &wp).unwrap() - e).abs());
    }
    let msg = format!(
        "25 loss-aversion points, 5x50 inverse-S points, |w(1/e) - 1/e| <= {worst_fixed:.1e}"
    );
    if worst_fixed < 1e-12 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn channel_consistency() -> Check {
    let cfg = MultipathConfig::normalized(64, 2024).unwrap();
    let d = ks_distance(gain_samples(&cfg, 100_000), |g| 1.0 - (-g).exp());
    let msg = format!("K=64, n=1e5 sup distance {d:.4}");
    if d < 0.01 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn fig6_increment() -> Check {
    let rows = run_scenario(&preset("fig6").unwrap()).map_err(|e| e.to_string())?;
    let at = |p: f64| rows.iter().find(|r| r.axis == p).map(|r| r.value).unwrap();
    let inc = at(1000.0) - at(400.0);
    let msg = format!("fig6 preset pu_rate(1000) - pu_rate(400) = {inc:.4}");
    if (0.1..=0.6).contains(&inc) {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (
            "1 zero-power limit",
            zero_power_limit,
            Duration::from_secs(1),
        ),
        (
            "2 classical reduction",
            classical_reduction,
            Duration::from_secs(1),
        ),
        (
            "3 oracle agreement",
            oracle_agreement,
            Duration::from_secs(120),
        ),
        (
            "4 density validity",
            density_validity,
            Duration::from_secs(10),
        ),
        ("5 shape reproduction", shapes, Duration::from_secs(30)),
        (
            "6 prospect properties",
            prospect_properties,
            Duration::from_secs(1),
        ),
        (
            "7 channel consistency",
            channel_consistency,
            Duration::from_secs(10),
        ),
        (
            "8 preset increment",
            fig6_increment,
            Duration::from_secs(30),
        ),
    ];
    let mut failed = 0;
    for (name, check, limit) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let (status, detail) = match result {
            Ok(d) if elapsed <= limit => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; too slow")),
            Err(d) => ("FAIL", d),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "{status} criterion {name}: {detail} [{:.2?} / {:?}]",
            elapsed, limit
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! Independent closed forms and a plain composite Simpson rule used as
//! oracles. Nothing here calls into the library's numerics.

#![allow(dead_code)]

pub fn prelec(p: f64, gamma: f64, theta: f64) -> f64 {
    if p == 0.0 {
        return 0.0;
    }
    (-gamma * (-p.ln()).powf(theta)).exp()
}

pub fn prospect_value(x: f64, x0: f64, alpha: f64, l1: f64, l2: f64) -> f64 {
    if x >= x0 {
        l1 * (x - x0).powf(alpha)
    } else {
        -l2 * (x0 - x).powf(alpha)
    }
}

/// Perceived density of a unit-mean exponential gain, coded from scratch.
pub fn exp_ppdf(g: f64, gamma: f64, theta: f64) -> f64 {
    let f_cdf = -(-g).exp_m1();
    let t = if g < std::f64::consts::LN_2 {
        -f_cdf.ln()
    } else {
        -(-(-g).exp()).ln_1p()
    };
    let w_over_f = (t - gamma * t.powf(theta)).exp();
    gamma * theta * w_over_f * t.powf(theta - 1.0) * (-g).exp()
}

/// Composite Simpson on `n` (rounded up to even) panels.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let n = n + n % 2;
    let h = (b - a) / n as f64;
    let mut sum = f(a) + f(b);
    for i in 1..n {
        let x = a + i as f64 * h;
        sum += if i % 2 == 1 { 4.0 } else { 2.0 } * f(x);
    }
    sum * h / 3.0
}

/// Exponential integral E1 for x > 0.
pub fn e1(x: f64) -> f64 {
    if x < 1.0 {
        let mut sum = 0.0;
        let mut term = 1.0;
        for k in 1..200 {
            term *= -x / k as f64;
            let add = -term / k as f64;
            sum += add;
            if add.abs() < 1e-18 * sum.abs() {
                break;
            }
        }
        -0.577_215_664_901_532_9 - x.ln() + sum
    } else {
        // modified Lentz on the continued fraction
        let tiny = 1e-300;
        let mut b = x + 1.0;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..500 {
            let an = -((i * i) as f64);
            b += 2.0;
            d = 1.0 / (an * d + b);
            c = b + an / c;
            let del = c * d;
            h *= del;
            if (del - 1.0).abs() < 1e-16 {
                break;
            }
        }
        h * (-x).exp()
    }
}

/// Ergodic capacity in bits of a unit-mean Rayleigh link.
pub fn ergodic_capacity(snr: f64) -> f64 {
    (1.0 / snr).exp() * e1(1.0 / snr) / std::f64::consts::LN_2
}

/// Kolmogorov-style sup distance between an empirical sample and a CDF.
pub fn ks_distance(mut xs: Vec<f64>, cdf: impl Fn(f64) -> f64) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let c = cdf(x);
            (c - i as f64 / n).abs().max(((i + 1) as f64 / n - c).abs())
        })
        .fold(0.0, f64::max)
}

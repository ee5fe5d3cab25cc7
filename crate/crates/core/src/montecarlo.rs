//! Monte Carlo estimators of the perceptual metrics.
//!
//! Samples are drawn from the perceptual law itself by inverse transform,
//! `X = F⁻¹(w⁻¹(U))`, so the sample mean of `v(Ω(X), Ω₀)` targets the
//! perceptual utility without importance weights. This path never touches
//! the quadrature engine and serves as its independent check.
//!
//! Randomness comes from ChaCha8 with one stream per fixed-size batch. Batch
//! `i` always uses stream `i` of the configured seed, and batch statistics
//! are merged in batch order, so estimates are bit-identical regardless of
//! thread scheduling.

use rand::distributions::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::distributions::{BaseDistribution, PerceptualDistribution};
use crate::error::{Error, Result};
use crate::metrics::{CompositeMetric, LinkBudget, OutageSpec};
use crate::prospect::{value, weight, weight_derivative, ValueParams, WeightParams};

/// Generator identification recorded with every estimate.
pub const RNG_ALGORITHM: &str = "ChaCha8 (rand_chacha 0.3), stream = batch index";

/// Samples per substream batch.
pub const BATCH_SIZE: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McConfig {
    pub samples: usize,
    pub seed: u64,
}

impl McConfig {
    pub fn new(samples: usize, seed: u64) -> Result<Self> {
        if samples == 0 {
            return Err(Error::domain("Monte Carlo sample count must be at least 1"));
        }
        Ok(McConfig { samples, seed })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: usize,
    pub rng: &'static str,
}

/// Running mean and sum of squared deviations.
#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    n: usize,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.n += 1;
        let delta = x - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(self, other: Moments) -> Moments {
        if self.n == 0 {
            return other;
        }
        if other.n == 0 {
            return self;
        }
        let n = self.n + other.n;
        let delta = other.mean - self.mean;
        let mean = self.mean + delta * (other.n as f64 / n as f64);
        let m2 = self.m2 + other.m2 + delta * delta * (self.n as f64 * other.n as f64 / n as f64);
        Moments { n, mean, m2 }
    }

    fn std_error(&self) -> f64 {
        if self.n < 2 {
            return 0.0;
        }
        (self.m2 / (self.n - 1) as f64 / self.n as f64).sqrt()
    }
}

pub(crate) fn batch_rng(seed: u64, batch: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(batch as u64);
    rng
}

/// Runs `per_batch(rng, count)` over fixed substreams and collects results in
/// batch order.
pub(crate) fn map_batches<T, F>(samples: usize, seed: u64, per_batch: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut ChaCha8Rng, usize) -> T + Sync,
{
    let batches = samples.div_ceil(BATCH_SIZE);
    (0..batches)
        .into_par_iter()
        .map(|b| {
            let count = BATCH_SIZE.min(samples - b * BATCH_SIZE);
            let mut rng = batch_rng(seed, b);
            per_batch(&mut rng, count)
        })
        .collect()
}

/// Sample-mean estimate of the perceptual utility of `metric`.
pub fn mc_pu<D, F>(
    metric: &CompositeMetric<F>,
    pd: &PerceptualDistribution<D>,
    vp: &ValueParams,
    cfg: &McConfig,
) -> Result<McEstimate>
where
    D: BaseDistribution,
    F: Fn(f64) -> f64 + Sync,
{
    if cfg.samples < 2 {
        return Err(Error::domain(
            "Monte Carlo utility estimate needs at least 2 samples",
        ));
    }
    let reference = metric.reference();
    let moments = map_batches(cfg.samples, cfg.seed, |rng, count| {
        let mut m = Moments::default();
        for _ in 0..count {
            let u: f64 = rng.sample(Open01);
            let x = pd.sample_neg_log(-u.ln());
            m.push(value(metric.eval(x), reference, vp));
        }
        m
    })
    .into_iter()
    .fold(Moments::default(), Moments::merge);

    Ok(McEstimate {
        mean: moments.mean,
        std_error: moments.std_error(),
        samples: moments.n,
        rng: RNG_ALGORITHM,
    })
}

/// Perceived outage estimated from plain channel draws.
///
/// The outage frequency is counted on unweighted gains and then passed
/// through the weighting function; the standard error is propagated with
/// the derivative of the weighting function.
pub fn mc_pop(
    link: &LinkBudget,
    spec: &OutageSpec,
    wp: &WeightParams,
    cfg: &McConfig,
) -> Result<McEstimate> {
    let threshold = if link.pt_over_n0() == 0.0 {
        f64::INFINITY
    } else {
        link.gain_for_rate(spec.epsilon())
    };
    let channel = *link.channel();
    let outages: usize = map_batches(cfg.samples, cfg.seed, |rng, count| {
        let mut hits = 0usize;
        for _ in 0..count {
            let u: f64 = rng.sample(Open01);
            let g = channel.inverse_cdf(u).unwrap_or(f64::INFINITY);
            if g < threshold {
                hits += 1;
            }
        }
        hits
    })
    .into_iter()
    .sum();

    let n = cfg.samples as f64;
    let p_hat = outages as f64 / n;
    let mean = weight(p_hat, wp)?;
    let std_error = if p_hat > 0.0 && p_hat < 1.0 {
        weight_derivative(p_hat, wp)? * (p_hat * (1.0 - p_hat) / n).sqrt()
    } else {
        0.0
    };
    Ok(McEstimate {
        mean,
        std_error,
        samples: cfg.samples,
        rng: RNG_ALGORITHM,
    })
}

//! Sum-of-paths multipath channel.
//!
//! Each coefficient is `H = Σₖ Aₖ·exp(-jθₖ)` with independent phases
//! `θₖ ~ U[0, 2π)`. As the path count grows, `H` tends to a zero-mean complex
//! Gaussian and `G = |H|²` to an exponential law, which is the gain model the
//! metric engine assumes.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::montecarlo::map_batches;

/// How per-path amplitudes are assigned.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AmplitudeModel {
    /// `Aₖ = scale/√K`, so that `E[|H|²] = scale²`.
    #[default]
    EqualPower,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultipathConfig {
    pub k_paths: usize,
    pub amplitude_scale: f64,
    pub amplitudes: AmplitudeModel,
    pub seed: u64,
}

impl MultipathConfig {
    pub fn new(k_paths: usize, amplitude_scale: f64, seed: u64) -> Result<Self> {
        if k_paths == 0 {
            return Err(Error::domain("multipath channel needs at least one path"));
        }
        if !(amplitude_scale.is_finite() && amplitude_scale > 0.0) {
            return Err(Error::domain(format!(
                "amplitude scale {amplitude_scale} must be positive and finite"
            )));
        }
        Ok(MultipathConfig {
            k_paths,
            amplitude_scale,
            amplitudes: AmplitudeModel::EqualPower,
            seed,
        })
    }

    /// Unit average power gain.
    pub fn normalized(k_paths: usize, seed: u64) -> Result<Self> {
        Self::new(k_paths, 1.0, seed)
    }

    pub fn path_amplitude(&self) -> f64 {
        match self.amplitudes {
            AmplitudeModel::EqualPower => self.amplitude_scale / (self.k_paths as f64).sqrt(),
        }
    }

    /// `E[|H|²]` implied by the amplitude model.
    pub fn mean_gain(&self) -> f64 {
        self.amplitude_scale * self.amplitude_scale
    }
}

/// `n` channel coefficients.
pub fn draw_channel(cfg: &MultipathConfig, n: usize) -> Vec<Complex64> {
    let amp = cfg.path_amplitude();
    let k = cfg.k_paths;
    map_batches(n, cfg.seed, |rng, count| {
        (0..count)
            .map(|_| {
                (0..k).fold(Complex64::new(0.0, 0.0), |h, _| {
                    let phase: f64 = rng.gen::<f64>() * TAU;
                    h + Complex64::from_polar(amp, -phase)
                })
            })
            .collect::<Vec<_>>()
    })
    .concat()
}

/// `n` power gains `|H|²`.
pub fn gain_samples(cfg: &MultipathConfig, n: usize) -> Vec<f64> {
    draw_channel(cfg, n).iter().map(|h| h.norm_sqr()).collect()
}

/// Kolmogorov sup-distance between the empirical CDF of `samples` and `cdf`.
pub fn sup_distance(samples: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}

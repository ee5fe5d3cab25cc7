//! Prospect-theoretic perceptual metrics for fading wireless links.
//!
//! Objective link metrics (SNR, rate, outage probability) are mapped to
//! perceived quantities through a reference-dependent value function and
//! Prelec probability weighting:
//!
//! * [`prospect`]: value function, weighting function and their parameters.
//! * [`distributions`]: exponential channel gain and perceptual CDF/PDF.
//! * [`metrics`]: perceptual utility of SNR and rate, perceptual outage.
//! * [`montecarlo`]: independent sampling estimators of the same metrics.
//! * [`channel`]: sum-of-paths simulator behind the exponential gain model.
//! * [`sweep`]: scenario files, parameter sweeps and CSV output.

pub mod channel;
pub mod distributions;
pub mod error;
pub mod metrics;
pub mod montecarlo;
pub mod prospect;
pub mod quadrature;
pub mod sweep;

pub use distributions::{BaseDistribution, ExponentialGain, PerceptualDistribution};
pub use error::{Constraint, Error, Result};
pub use metrics::{
    outage_probability, pop, pu_composite, pu_rate, pu_snr, CompositeMetric, LinkBudget,
    OutageSpec, PuResult,
};
pub use montecarlo::{mc_pop, mc_pu, McConfig, McEstimate};
pub use prospect::{
    validate_value_params, value, weight, weight_inverse, Mode, ReferencePoint, ValueParams,
    WeightParams,
};
pub use quadrature::Integrator;

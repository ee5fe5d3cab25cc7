//! Perceptual utility of composite metrics and the three link-level case
//! studies: PU of SNR, PU of rate, and perceptual outage probability.
//!
//! The perceptual utility of a metric `Ω(g)` with reference `Ω₀` is the
//! expectation of `v(Ω(g), Ω₀)` under the perceptual density of `g`. Directly
//! in `g` that integrand has an integrable singularity (the perceptual
//! density blows up at both ends of the base CDF) and a kink of unbounded
//! slope at the crossing `g*`. Substituting `s = γ(-ln F(g))^θ` turns it into
//!
//! ```text
//! Ω̃ = ∫₀^∞ h(s) e^{-s} ds,   h(s) = v(Ω(F⁻¹(w⁻¹(e^{-s}))), Ω₀)
//! ```
//!
//! which is integrated directly on `[0, 1]` and through `t = e^{-s}` on the
//! tail, with the crossing image `s*` always placed on a segment boundary.

use crate::distributions::{BaseDistribution, ExponentialGain, PerceptualDistribution};
use crate::error::{Error, Result};
use crate::prospect::{value, ReferencePoint, ValueParams, WeightParams};
use crate::quadrature::{Integrator, Segment};

/// End of the directly integrated `s` range; beyond it the tail is mapped
/// onto `t = e^{-s}`.
const DIRECT_SPAN: f64 = 1.0;

/// Transmit-power-to-noise ratio together with the fading channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkBudget {
    pt_over_n0: f64,
    channel: ExponentialGain,
}

impl LinkBudget {
    pub fn new(pt_over_n0: f64, channel: ExponentialGain) -> Result<Self> {
        if !(pt_over_n0.is_finite() && pt_over_n0 >= 0.0) {
            return Err(Error::domain(format!(
                "Pt/N0 = {pt_over_n0} must be finite and non-negative"
            )));
        }
        Ok(LinkBudget {
            pt_over_n0,
            channel,
        })
    }

    pub fn pt_over_n0(&self) -> f64 {
        self.pt_over_n0
    }

    pub fn channel(&self) -> &ExponentialGain {
        &self.channel
    }

    /// Instantaneous SNR for channel gain `g`.
    pub fn snr(&self, g: f64) -> f64 {
        self.pt_over_n0 * g
    }

    /// Instantaneous rate in bits/s/Hz for channel gain `g`.
    pub fn rate(&self, g: f64) -> f64 {
        (self.pt_over_n0 * g).ln_1p() / std::f64::consts::LN_2
    }

    /// Channel gain at which the rate equals `bits` (infinite at zero power).
    pub fn gain_for_rate(&self, bits: f64) -> f64 {
        if self.pt_over_n0 == 0.0 {
            return f64::INFINITY;
        }
        (bits * std::f64::consts::LN_2).exp_m1() / self.pt_over_n0
    }
}

/// Outage threshold in bits/s/Hz.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutageSpec {
    epsilon: f64,
}

impl OutageSpec {
    pub fn new(epsilon: f64) -> Result<Self> {
        if epsilon.is_finite() && epsilon > 0.0 {
            Ok(OutageSpec { epsilon })
        } else {
            Err(Error::domain(format!(
                "outage threshold {epsilon} must be positive and finite"
            )))
        }
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }
}

/// A perceptual utility with its numerical health.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PuResult {
    pub value: f64,
    pub abs_error: f64,
    pub evaluations: usize,
}

/// Monotone nondecreasing metric of a random gain, with its reference point
/// and the gain `g*` where the metric reaches the reference.
///
/// `crossing = 0` means the metric never falls below the reference;
/// `crossing = ∞` means it never reaches it.
#[derive(Debug, Clone, Copy)]
pub struct CompositeMetric<F> {
    map: F,
    reference: ReferencePoint,
    crossing: f64,
}

impl<F: Fn(f64) -> f64> CompositeMetric<F> {
    pub fn new(map: F, reference: ReferencePoint, crossing: f64) -> Result<Self> {
        if crossing.is_nan() || crossing < 0.0 {
            return Err(Error::domain(format!(
                "crossing point {crossing} must be non-negative"
            )));
        }
        Ok(CompositeMetric {
            map,
            reference,
            crossing,
        })
    }

    /// Locates the crossing by bracketing and bisection.
    pub fn with_bisection(map: F, reference: ReferencePoint) -> Self {
        let target = reference.get();
        let crossing = if map(0.0) >= target {
            0.0
        } else {
            let mut lo = 0.0;
            let mut hi = 1.0;
            while map(hi) < target && hi < 1e300 {
                lo = hi;
                hi *= 2.0;
            }
            if map(hi) < target {
                f64::INFINITY
            } else {
                for _ in 0..2000 {
                    let mid = 0.5 * (lo + hi);
                    if mid <= lo || mid >= hi {
                        break;
                    }
                    if map(mid) >= target {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                hi
            }
        };
        CompositeMetric {
            map,
            reference,
            crossing,
        }
    }

    pub fn eval(&self, g: f64) -> f64 {
        (self.map)(g)
    }

    pub fn reference(&self) -> ReferencePoint {
        self.reference
    }

    pub fn crossing(&self) -> f64 {
        self.crossing
    }
}

/// Perceptual utility of `metric` under the perceptual law `pd`.
pub fn pu_composite<D, F>(
    metric: &CompositeMetric<F>,
    pd: &PerceptualDistribution<D>,
    vp: &ValueParams,
    integrator: &Integrator,
) -> Result<PuResult>
where
    D: BaseDistribution,
    F: Fn(f64) -> f64 + Sync,
{
    let reference = metric.reference();
    let utility_at = |s: f64| value(metric.eval(pd.sample_neg_log(s)), reference, vp);
    let direct = |s: f64| utility_at(s) * (-s).exp();
    let tail = |t: f64| utility_at(-t.ln());

    let s_star = pd
        .weights()
        .neg_log_weight(pd.base().neg_log_cdf(metric.crossing()));

    let mut segments = Vec::with_capacity(4);
    if s_star > 0.0 && s_star < DIRECT_SPAN {
        segments.push(Segment::new(0.0, s_star, &direct));
        segments.push(Segment::new(s_star, DIRECT_SPAN, &direct));
    } else {
        segments.push(Segment::new(0.0, DIRECT_SPAN, &direct));
    }
    let t_edge = (-DIRECT_SPAN).exp();
    let t_star = (-s_star).exp();
    if s_star > DIRECT_SPAN && t_star > 0.0 {
        segments.push(Segment::new(0.0, t_star, &tail));
        segments.push(Segment::new(t_star, t_edge, &tail));
    } else {
        segments.push(Segment::new(0.0, t_edge, &tail));
    }

    let q = integrator.integrate_segments(&segments)?;
    Ok(PuResult {
        value: q.value,
        abs_error: q.abs_error,
        evaluations: q.evaluations,
    })
}

fn zero_power_limit(reference: ReferencePoint, vp: &ValueParams, metric_at_zero: f64) -> PuResult {
    PuResult {
        value: value(metric_at_zero, reference, vp),
        abs_error: 0.0,
        evaluations: 1,
    }
}

/// Gain at which `metric(g) = reference` for a metric proportional to Pt/N0.
fn crossing_at(link: &LinkBudget, reference: ReferencePoint, gain_at_unit_power: f64) -> f64 {
    if link.pt_over_n0 > 0.0 {
        gain_at_unit_power / link.pt_over_n0
    } else if reference.get() > 0.0 {
        f64::INFINITY
    } else {
        0.0
    }
}

/// Instantaneous SNR `Γ = (Pt/N0)·g` as a composite metric against `Γ₀`.
pub fn snr_metric(
    link: &LinkBudget,
    gamma0: ReferencePoint,
) -> CompositeMetric<impl Fn(f64) -> f64 + Sync + '_> {
    CompositeMetric {
        map: move |g| link.snr(g),
        reference: gamma0,
        crossing: crossing_at(link, gamma0, gamma0.get()),
    }
}

/// Instantaneous rate `Ψ = log₂(1 + Γ)` as a composite metric against `Ψ₀`.
///
/// The crossing gain is `(2^Ψ₀ - 1)·N0/Pt`, where the rate meets its
/// reference.
pub fn rate_metric(
    link: &LinkBudget,
    psi0: ReferencePoint,
) -> CompositeMetric<impl Fn(f64) -> f64 + Sync + '_> {
    let unit = (psi0.get() * std::f64::consts::LN_2).exp_m1();
    CompositeMetric {
        map: move |g| link.rate(g),
        reference: psi0,
        crossing: crossing_at(link, psi0, unit),
    }
}

/// Perceptual utility of the instantaneous SNR against `Γ₀`.
///
/// At zero power the SNR is identically zero and the result is the
/// constant-loss limit `v(0, Γ₀)`.
pub fn pu_snr(
    link: &LinkBudget,
    gamma0: ReferencePoint,
    vp: &ValueParams,
    wp: &WeightParams,
    integrator: &Integrator,
) -> Result<PuResult> {
    if link.pt_over_n0 == 0.0 {
        return Ok(zero_power_limit(gamma0, vp, 0.0));
    }
    let pd = PerceptualDistribution::new(link.channel, *wp);
    pu_composite(&snr_metric(link, gamma0), &pd, vp, integrator)
}

/// Perceptual utility of the instantaneous rate against `Ψ₀`.
pub fn pu_rate(
    link: &LinkBudget,
    psi0: ReferencePoint,
    vp: &ValueParams,
    wp: &WeightParams,
    integrator: &Integrator,
) -> Result<PuResult> {
    if link.pt_over_n0 == 0.0 {
        return Ok(zero_power_limit(psi0, vp, 0.0));
    }
    let pd = PerceptualDistribution::new(link.channel, *wp);
    pu_composite(&rate_metric(link, psi0), &pd, vp, integrator)
}

/// Probability that the rate falls below the outage threshold.
///
/// At zero power the threshold is unreachable and the outage is 1.
pub fn outage_probability(link: &LinkBudget, spec: &OutageSpec) -> f64 {
    if link.pt_over_n0 == 0.0 {
        return 1.0;
    }
    link.channel.cdf(link.gain_for_rate(spec.epsilon))
}

/// Perceived outage probability `w(P_out)`.
pub fn pop(link: &LinkBudget, spec: &OutageSpec, wp: &WeightParams) -> f64 {
    if link.pt_over_n0 == 0.0 {
        return 1.0;
    }
    PerceptualDistribution::new(link.channel, *wp).pcdf(link.gain_for_rate(spec.epsilon))
}

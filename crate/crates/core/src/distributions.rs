//! Base distributions and their perceptual (Prelec-distorted) counterparts.

use crate::error::{Error, Result};
use crate::prospect::WeightParams;

/// Minimal continuous distribution interface.
///
/// The `neg_log_*` methods work with `t = -ln F`, which stays accurate where
/// `F` itself rounds to 0 or 1. Implementations with closed forms should
/// override the defaults.
pub trait BaseDistribution: Send + Sync {
    fn cdf(&self, s: f64) -> f64;

    fn pdf(&self, s: f64) -> f64;

    /// Quantile for `u` in the open unit interval.
    fn inverse_cdf(&self, u: f64) -> Result<f64>;

    /// Closed support interval; endpoints may be infinite.
    fn support(&self) -> (f64, f64);

    /// `-ln F(s)`.
    fn neg_log_cdf(&self, s: f64) -> f64 {
        -self.cdf(s).ln()
    }

    /// Quantile at `u = exp(-t)`.
    fn quantile_neg_log(&self, t: f64) -> f64 {
        let (lo, hi) = self.support();
        if t <= 0.0 {
            return hi;
        }
        if t.is_infinite() {
            return lo;
        }
        self.inverse_cdf((-t).exp()).unwrap_or(lo)
    }
}

/// `ln(1 - e^{-x})` for `x > 0`, accurate at both ends.
fn ln_one_minus_exp_neg(x: f64) -> f64 {
    if x < std::f64::consts::LN_2 {
        (-(-x).exp_m1()).ln()
    } else {
        (-(-x).exp()).ln_1p()
    }
}

/// Exponentially distributed channel power gain with mean `mu`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentialGain {
    mu: f64,
}

impl ExponentialGain {
    pub fn new(mu: f64) -> Result<Self> {
        if mu.is_finite() && mu > 0.0 {
            Ok(ExponentialGain { mu })
        } else {
            Err(Error::domain(format!(
                "average channel gain {mu} must be positive and finite"
            )))
        }
    }

    /// Unit-mean channel.
    pub fn normalized() -> Self {
        ExponentialGain { mu: 1.0 }
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }
}

impl BaseDistribution for ExponentialGain {
    fn cdf(&self, s: f64) -> f64 {
        if s <= 0.0 {
            0.0
        } else {
            -(-s / self.mu).exp_m1()
        }
    }

    fn pdf(&self, s: f64) -> f64 {
        if s < 0.0 {
            0.0
        } else {
            (-s / self.mu).exp() / self.mu
        }
    }

    fn inverse_cdf(&self, u: f64) -> Result<f64> {
        if u > 0.0 && u < 1.0 {
            Ok(-self.mu * (-u).ln_1p())
        } else {
            Err(Error::domain(format!(
                "quantile level {u} outside the open unit interval"
            )))
        }
    }

    fn support(&self) -> (f64, f64) {
        (0.0, f64::INFINITY)
    }

    fn neg_log_cdf(&self, s: f64) -> f64 {
        if s <= 0.0 {
            f64::INFINITY
        } else {
            -ln_one_minus_exp_neg(s / self.mu)
        }
    }

    fn quantile_neg_log(&self, t: f64) -> f64 {
        if t <= 0.0 {
            f64::INFINITY
        } else {
            -self.mu * ln_one_minus_exp_neg(t)
        }
    }
}

/// A base law viewed through the probability weighting function:
/// `pcdf = w ∘ F` and `ppdf = d(pcdf)/ds`.
#[derive(Debug, Clone, Copy)]
pub struct PerceptualDistribution<D> {
    base: D,
    weights: WeightParams,
}

impl<D: BaseDistribution> PerceptualDistribution<D> {
    pub fn new(base: D, weights: WeightParams) -> Self {
        PerceptualDistribution { base, weights }
    }

    pub fn base(&self) -> &D {
        &self.base
    }

    pub fn weights(&self) -> &WeightParams {
        &self.weights
    }

    /// Perceived probability `w(F(s))`.
    pub fn pcdf(&self, s: f64) -> f64 {
        let t = self.base.neg_log_cdf(s);
        (-self.weights.neg_log_weight(t)).exp()
    }

    /// Perceived density `γθ w(F) (-ln F)^(θ-1) f / F`.
    ///
    /// Undefined where `F(s)` is exactly 0 or 1, including points where
    /// `-ln F` underflows.
    pub fn ppdf(&self, s: f64) -> Result<f64> {
        let t = self.base.neg_log_cdf(s);
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::domain(format!(
                "perceptual density undefined at {s}: base CDF is 0 or 1"
            )));
        }
        let w = &self.weights;
        let density = self.base.pdf(s);
        if w.is_identity() {
            return Ok(density);
        }
        let scale = w.gamma() * w.theta();
        // w(F)/F = exp(t - γ t^θ)
        let ratio = (t - w.neg_log_weight(t)).exp();
        Ok(scale * ratio * t.powf(w.theta() - 1.0) * density)
    }

    /// Inverse-transform draw from the perceptual law: `F⁻¹(w⁻¹(u))`.
    pub fn sample(&self, u: f64) -> Result<f64> {
        if !(u > 0.0 && u < 1.0) {
            return Err(Error::domain(format!(
                "uniform variate {u} outside the open unit interval"
            )));
        }
        Ok(self.sample_neg_log(-u.ln()))
    }

    /// Draw given `-ln u` of the perceived level.
    pub(crate) fn sample_neg_log(&self, neg_log_u: f64) -> f64 {
        let t = self.weights.neg_log_weight_inverse(neg_log_u);
        self.base.quantile_neg_log(t)
    }
}

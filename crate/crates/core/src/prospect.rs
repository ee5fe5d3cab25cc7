//! Value function and Prelec probability weighting.
//!
//! The value function is the two-part power form
//!
//! ```text
//! v(x, x0) =  λ_gain · (x - x0)^α      x >= x0
//!            -λ_loss · (x0 - x)^α      x <  x0
//! ```
//!
//! and the weighting function is `w(p) = exp(-γ (-ln p)^θ)`.
//!
//! Parameter validation comes in two modes. [`Mode::Strict`] enforces the
//! prospect-theory properties (concave gains, convex losses, loss aversion),
//! which pins the four-parameter form down to a single curvature `α` with
//! `λ_gain < λ_loss`. [`Mode::Permissive`] relaxes the bounds far enough to
//! admit the linear, unweighted reduction (`α = 1`, `λ = 1`, `γ = θ = 1`).

use serde::{Deserialize, Serialize};

use crate::error::{Constraint, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Strict,
    Permissive,
}

/// Reduced three-parameter value function: one curvature, two scale factors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValueParams {
    alpha: f64,
    lambda_gain: f64,
    lambda_loss: f64,
    mode: Mode,
}

/// Validates the general four-parameter value function and reduces it.
///
/// `alpha1`/`lambda1` shape the gain branch, `alpha2`/`lambda2` the loss
/// branch. Loss aversion must hold for every deviation size, which is only
/// possible with equal curvatures, so unequal curvatures are rejected in
/// both modes.
pub fn validate_value_params(
    alpha1: f64,
    alpha2: f64,
    lambda1: f64,
    lambda2: f64,
    mode: Mode,
) -> Result<ValueParams> {
    if ![alpha1, alpha2, lambda1, lambda2]
        .iter()
        .all(|v| v.is_finite())
    {
        return Err(Error::domain("value function parameters must be finite"));
    }
    let upper_ok = |a: f64| match mode {
        Mode::Strict => a > 0.0 && a < 1.0,
        Mode::Permissive => a > 0.0 && a <= 1.0,
    };
    if !upper_ok(alpha1) {
        return Err(Error::violation(
            Constraint::Concavity,
            format!("gain curvature {alpha1} outside the admissible range"),
        ));
    }
    if !upper_ok(alpha2) {
        return Err(Error::violation(
            Constraint::Convexity,
            format!("loss curvature {alpha2} outside the admissible range"),
        ));
    }
    if alpha1 != alpha2 {
        return Err(Error::violation(
            Constraint::LossAversion,
            format!(
                "curvatures {alpha1} and {alpha2} differ; loss aversion then fails for some deviation size"
            ),
        ));
    }
    if lambda1 <= 0.0 || lambda2 <= 0.0 {
        return Err(Error::violation(
            Constraint::LossAversion,
            format!("scale factors must be positive (got {lambda1}, {lambda2})"),
        ));
    }
    if mode == Mode::Strict && lambda1 >= lambda2 {
        return Err(Error::violation(
            Constraint::LossAversion,
            format!("gain scale {lambda1} must be below loss scale {lambda2}"),
        ));
    }
    Ok(ValueParams {
        alpha: alpha1,
        lambda_gain: lambda1,
        lambda_loss: lambda2,
        mode,
    })
}

impl ValueParams {
    pub fn new(alpha: f64, lambda_gain: f64, lambda_loss: f64, mode: Mode) -> Result<Self> {
        validate_value_params(alpha, alpha, lambda_gain, lambda_loss, mode)
    }

    /// Linear value `v(x) = x - x0`.
    pub fn linear() -> Self {
        ValueParams {
            alpha: 1.0,
            lambda_gain: 1.0,
            lambda_loss: 1.0,
            mode: Mode::Permissive,
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn lambda_gain(&self) -> f64 {
        self.lambda_gain
    }

    pub fn lambda_loss(&self) -> f64 {
        self.lambda_loss
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Loss-aversion ratio λ_loss / λ_gain.
    pub fn loss_ratio(&self) -> f64 {
        self.lambda_loss / self.lambda_gain
    }
}

impl Default for ValueParams {
    /// α = 0.5, λ_gain = 1, λ_loss = 2.
    fn default() -> Self {
        ValueParams {
            alpha: 0.5,
            lambda_gain: 1.0,
            lambda_loss: 2.0,
            mode: Mode::Strict,
        }
    }
}

/// Reference point of a quantity metric.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferencePoint(f64);

impl ReferencePoint {
    /// Strictly positive reference point.
    pub fn new(x0: f64) -> Result<Self> {
        Self::with_mode(x0, Mode::Strict)
    }

    /// Permissive mode also accepts `x0 = 0`, used by the linear reduction.
    pub fn with_mode(x0: f64, mode: Mode) -> Result<Self> {
        let ok = x0.is_finite()
            && match mode {
                Mode::Strict => x0 > 0.0,
                Mode::Permissive => x0 >= 0.0,
            };
        if ok {
            Ok(ReferencePoint(x0))
        } else {
            Err(Error::violation(
                Constraint::Reference,
                format!("reference point {x0} must be positive and finite"),
            ))
        }
    }

    pub fn zero() -> Self {
        ReferencePoint(0.0)
    }

    pub fn get(&self) -> f64 {
        self.0
    }
}

/// `|d|^α`, exact zero at `d = 0`, log-space below the underflow edge.
fn power(d: f64, alpha: f64) -> f64 {
    if d == 0.0 {
        0.0
    } else if d < 1e-300 {
        (alpha * d.ln()).exp()
    } else {
        d.powf(alpha)
    }
}

/// Perceived value of quantity `x` relative to `reference`.
pub fn value(x: f64, reference: ReferencePoint, p: &ValueParams) -> f64 {
    let x0 = reference.get();
    if x >= x0 {
        p.lambda_gain * power(x - x0, p.alpha)
    } else {
        -p.lambda_loss * power(x0 - x, p.alpha)
    }
}

/// Prelec weighting parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightParams {
    gamma: f64,
    theta: f64,
    mode: Mode,
}

impl WeightParams {
    pub fn new(gamma: f64, theta: f64, mode: Mode) -> Result<Self> {
        if !(gamma.is_finite() && gamma > 0.0) {
            return Err(Error::violation(
                Constraint::Weighting,
                format!("gamma {gamma} must be positive and finite"),
            ));
        }
        let theta_ok = match mode {
            Mode::Strict => theta > 0.0 && theta < 1.0,
            Mode::Permissive => theta > 0.0 && theta <= 1.0,
        };
        if !theta_ok {
            return Err(Error::violation(
                Constraint::Weighting,
                format!("theta {theta} outside the admissible range for {mode:?} mode"),
            ));
        }
        Ok(WeightParams { gamma, theta, mode })
    }

    /// γ = θ = 1: `w(p) = p`.
    pub fn identity() -> Self {
        WeightParams {
            gamma: 1.0,
            theta: 1.0,
            mode: Mode::Permissive,
        }
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn is_identity(&self) -> bool {
        self.gamma == 1.0 && self.theta == 1.0
    }

    /// Maps `-ln p` to `-ln w(p)`, i.e. `l ↦ γ l^θ`.
    ///
    /// Working on negative logs keeps full relative precision for
    /// probabilities close to 0 and close to 1.
    pub fn neg_log_weight(&self, neg_log_p: f64) -> f64 {
        if neg_log_p == 0.0 || neg_log_p.is_infinite() {
            return neg_log_p;
        }
        self.gamma * neg_log_p.powf(self.theta)
    }

    /// Inverse of [`neg_log_weight`](Self::neg_log_weight): `s ↦ (s/γ)^(1/θ)`.
    pub fn neg_log_weight_inverse(&self, neg_log_q: f64) -> f64 {
        if neg_log_q == 0.0 || neg_log_q.is_infinite() {
            return neg_log_q;
        }
        (neg_log_q / self.gamma).powf(self.theta.recip())
    }
}

impl Default for WeightParams {
    /// γ = 1, θ = 0.8.
    fn default() -> Self {
        WeightParams {
            gamma: 1.0,
            theta: 0.8,
            mode: Mode::Strict,
        }
    }
}

fn check_probability(p: f64, what: &str) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::domain(format!("{what} {p} outside [0, 1]")))
    }
}

/// Perceived probability `w(p) = exp(-γ (-ln p)^θ)`, with `w(0) = 0`.
pub fn weight(p: f64, w: &WeightParams) -> Result<f64> {
    check_probability(p, "probability")?;
    if p == 0.0 {
        return Ok(0.0);
    }
    Ok((-w.neg_log_weight(-p.ln())).exp())
}

/// Objective probability whose weight is `q`.
pub fn weight_inverse(q: f64, w: &WeightParams) -> Result<f64> {
    check_probability(q, "perceived probability")?;
    if q == 0.0 {
        return Ok(0.0);
    }
    Ok((-w.neg_log_weight_inverse(-q.ln())).exp())
}

/// `dw/dp = γθ w(p) (-ln p)^(θ-1) / p` on the open interval.
pub fn weight_derivative(p: f64, w: &WeightParams) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::domain(format!(
            "weight derivative requires 0 < p < 1, got {p}"
        )));
    }
    let l = -p.ln();
    Ok(w.gamma * w.theta * (-w.neg_log_weight(l)).exp() * l.powf(w.theta - 1.0) / p)
}

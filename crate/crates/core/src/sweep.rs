//! Scenario files, parameter sweeps, oracle cross-checks and CSV output.
//!
//! A scenario is a JSON document naming one metric, one sweep axis with its
//! grid, and the parameters held fixed along that axis:
//!
//! ```json
//! {
//!   "schema": "perceptual-qos/scenario/v1",
//!   "metric": "pu_snr",
//!   "axis": { "variable": "pt_over_n0", "grid": [1, 10, 100] },
//!   "value_params": { "alpha": 0.5, "lambda_gain": 1, "lambda_loss": 2 },
//!   "weight_params": { "gamma": 1, "theta": 0.8 },
//!   "reference": 4,
//!   "monte_carlo": { "samples": 1000000, "seed": 1 }
//! }
//! ```
//!
//! Unknown keys are rejected. Omitted parameters take the defaults of
//! [`ValueSpec`], [`WeightSpec`] and [`Scenario`].

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distributions::{ExponentialGain, PerceptualDistribution};
use crate::error::{Error, Result};
use crate::metrics::{
    outage_probability, pop, pu_rate, pu_snr, rate_metric, snr_metric, LinkBudget, OutageSpec,
    PuResult,
};
use crate::montecarlo::{mc_pop, mc_pu, McConfig, McEstimate};
use crate::prospect::{value, weight, Mode, ReferencePoint, ValueParams, WeightParams};
use crate::quadrature::{Integrator, DEFAULT_MAX_EVALUATIONS, DEFAULT_TOLERANCE};

pub const SCHEMA_VERSION: &str = "perceptual-qos/scenario/v1";

pub const SWEEP_HEADER: &str = "axis,value,err,n_eval";
pub const CROSS_CHECK_HEADER: &str = "axis,quad,quad_err,n_eval,mc,mc_se,samples,pass";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MetricKind {
    ValueCurve,
    WeightCurve,
    Pcdf,
    Ppdf,
    PuSnr,
    PuRate,
    Pop,
}

impl MetricKind {
    fn allowed_axes(self) -> &'static [AxisVariable] {
        use AxisVariable::*;
        match self {
            MetricKind::ValueCurve => &[X],
            MetricKind::WeightCurve => &[P],
            MetricKind::Pcdf | MetricKind::Ppdf => &[S],
            MetricKind::PuSnr | MetricKind::PuRate => &[
                PtOverN0, Reference, Alpha, LambdaGain, LambdaLoss, Gamma, Theta, Mu,
            ],
            MetricKind::Pop => &[PtOverN0, Epsilon, Gamma, Theta, Mu],
        }
    }

    fn supports_cross_check(self) -> bool {
        matches!(
            self,
            MetricKind::PuSnr | MetricKind::PuRate | MetricKind::Pop
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AxisVariable {
    /// Quantity metric fed to the value function.
    X,
    /// Objective probability fed to the weighting function.
    P,
    /// Argument of the perceptual CDF/PDF.
    S,
    PtOverN0,
    Reference,
    Alpha,
    LambdaGain,
    LambdaLoss,
    Gamma,
    Theta,
    Epsilon,
    Mu,
}

impl AxisVariable {
    pub fn name(self) -> &'static str {
        match self {
            AxisVariable::X => "x",
            AxisVariable::P => "p",
            AxisVariable::S => "s",
            AxisVariable::PtOverN0 => "pt_over_n0",
            AxisVariable::Reference => "reference",
            AxisVariable::Alpha => "alpha",
            AxisVariable::LambdaGain => "lambda_gain",
            AxisVariable::LambdaLoss => "lambda_loss",
            AxisVariable::Gamma => "gamma",
            AxisVariable::Theta => "theta",
            AxisVariable::Epsilon => "epsilon",
            AxisVariable::Mu => "mu",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Axis {
    pub variable: AxisVariable,
    pub grid: Vec<f64>,
}

/// Value function parameters as written in a scenario file.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ValueSpec {
    pub alpha: f64,
    pub lambda_gain: f64,
    pub lambda_loss: f64,
    pub mode: Mode,
}

impl Default for ValueSpec {
    fn default() -> Self {
        let p = ValueParams::default();
        ValueSpec {
            alpha: p.alpha(),
            lambda_gain: p.lambda_gain(),
            lambda_loss: p.lambda_loss(),
            mode: p.mode(),
        }
    }
}

impl ValueSpec {
    pub fn params(&self) -> Result<ValueParams> {
        ValueParams::new(self.alpha, self.lambda_gain, self.lambda_loss, self.mode)
    }
}

/// Weighting parameters as written in a scenario file.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct WeightSpec {
    pub gamma: f64,
    pub theta: f64,
    pub mode: Mode,
}

impl Default for WeightSpec {
    fn default() -> Self {
        let w = WeightParams::default();
        WeightSpec {
            gamma: w.gamma(),
            theta: w.theta(),
            mode: w.mode(),
        }
    }
}

impl WeightSpec {
    pub fn params(&self) -> Result<WeightParams> {
        WeightParams::new(self.gamma, self.theta, self.mode)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct McSpec {
    pub samples: usize,
    pub seed: u64,
}

fn default_schema() -> String {
    SCHEMA_VERSION.to_string()
}
fn default_reference() -> f64 {
    4.0
}
fn default_one() -> f64 {
    1.0
}
fn default_ptn0() -> f64 {
    10.0
}
fn default_tolerance() -> f64 {
    DEFAULT_TOLERANCE
}
fn default_budget() -> usize {
    DEFAULT_MAX_EVALUATIONS
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default = "default_schema")]
    pub schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub metric: MetricKind,
    pub axis: Axis,
    #[serde(default)]
    pub value_params: ValueSpec,
    #[serde(default)]
    pub weight_params: WeightSpec,
    /// Reference point of the metric (x₀, Γ₀ or Ψ₀).
    #[serde(default = "default_reference")]
    pub reference: f64,
    #[serde(default = "default_one")]
    pub mu: f64,
    #[serde(default = "default_ptn0")]
    pub pt_over_n0: f64,
    #[serde(default = "default_one")]
    pub epsilon: f64,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    #[serde(default = "default_budget")]
    pub max_evaluations: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monte_carlo: Option<McSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub axis: f64,
    pub value: f64,
    /// Quadrature error estimate, or zero for closed forms.
    pub err: f64,
    pub n_eval: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossCheckRow {
    pub axis: f64,
    pub quad: f64,
    pub quad_err: f64,
    pub n_eval: usize,
    pub mc: f64,
    pub mc_se: f64,
    pub samples: usize,
    pub pass: bool,
}

/// Fully validated parameters for one grid point.
struct Point {
    metric: MetricKind,
    x: f64,
    vp: ValueParams,
    wp: WeightParams,
    reference: ReferencePoint,
    link: LinkBudget,
    outage: Option<OutageSpec>,
    integrator: Integrator,
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self> {
        let s: Scenario = serde_json::from_str(text)?;
        s.validate()?;
        Ok(s)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }

    /// Structural checks plus parameter validation at every grid point.
    pub fn validate(&self) -> Result<()> {
        if self.schema != SCHEMA_VERSION {
            return Err(Error::Scenario(format!(
                "unsupported schema {:?}, expected {SCHEMA_VERSION:?}",
                self.schema
            )));
        }
        let grid = &self.axis.grid;
        if grid.is_empty() {
            return Err(Error::Scenario("axis grid is empty".into()));
        }
        if grid.iter().any(|v| !v.is_finite()) {
            return Err(Error::Scenario(
                "axis grid contains non-finite values".into(),
            ));
        }
        if grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Scenario(
                "axis grid must be strictly increasing".into(),
            ));
        }
        if !self.metric.allowed_axes().contains(&self.axis.variable) {
            return Err(Error::Scenario(format!(
                "axis {} is not available for metric {:?}",
                self.axis.variable.name(),
                self.metric
            )));
        }
        if let Some(mc) = self.monte_carlo {
            McConfig::new(mc.samples, mc.seed)?;
        }
        for &v in grid {
            self.point(v)?;
        }
        Ok(())
    }

    fn with_context(&self, axis_value: f64, err: Error) -> Error {
        Error::AtGridPoint {
            axis: self.axis.variable.name().to_string(),
            value: axis_value,
            source: Box::new(err),
        }
    }

    fn point(&self, axis_value: f64) -> Result<Point> {
        let build = || -> Result<Point> {
            let mut s = self.clone();
            let mut x = f64::NAN;
            match self.axis.variable {
                AxisVariable::X | AxisVariable::P | AxisVariable::S => x = axis_value,
                AxisVariable::PtOverN0 => s.pt_over_n0 = axis_value,
                AxisVariable::Reference => s.reference = axis_value,
                AxisVariable::Alpha => s.value_params.alpha = axis_value,
                AxisVariable::LambdaGain => s.value_params.lambda_gain = axis_value,
                AxisVariable::LambdaLoss => s.value_params.lambda_loss = axis_value,
                AxisVariable::Gamma => s.weight_params.gamma = axis_value,
                AxisVariable::Theta => s.weight_params.theta = axis_value,
                AxisVariable::Epsilon => s.epsilon = axis_value,
                AxisVariable::Mu => s.mu = axis_value,
            }
            let mode = s.value_params.mode;
            let outage = match s.metric {
                MetricKind::Pop => Some(OutageSpec::new(s.epsilon)?),
                _ => None,
            };
            Ok(Point {
                metric: s.metric,
                x,
                vp: s.value_params.params()?,
                wp: s.weight_params.params()?,
                reference: ReferencePoint::with_mode(s.reference, mode)?,
                link: LinkBudget::new(s.pt_over_n0, ExponentialGain::new(s.mu)?)?,
                outage,
                integrator: Integrator::new(s.tolerance, s.max_evaluations)?,
            })
        };
        build().map_err(|e| self.with_context(axis_value, e))
    }

    fn mc_config(&self) -> Result<McConfig> {
        let mc = self
            .monte_carlo
            .ok_or_else(|| Error::Scenario("cross-check needs a monte_carlo section".into()))?;
        McConfig::new(mc.samples, mc.seed)
    }
}

fn closed(axis: f64, value: f64) -> SweepRow {
    SweepRow {
        axis,
        value,
        err: 0.0,
        n_eval: 1,
    }
}

fn from_pu(axis: f64, r: PuResult) -> SweepRow {
    SweepRow {
        axis,
        value: r.value,
        err: r.abs_error,
        n_eval: r.evaluations,
    }
}

fn evaluate(axis: f64, pt: &Point) -> Result<SweepRow> {
    let pd = || PerceptualDistribution::new(*pt.link.channel(), pt.wp);
    Ok(match pt.metric {
        MetricKind::ValueCurve => closed(axis, value(pt.x, pt.reference, &pt.vp)),
        MetricKind::WeightCurve => closed(axis, weight(pt.x, &pt.wp)?),
        MetricKind::Pcdf => closed(axis, pd().pcdf(pt.x)),
        MetricKind::Ppdf => closed(axis, pd().ppdf(pt.x)?),
        MetricKind::PuSnr => from_pu(
            axis,
            pu_snr(&pt.link, pt.reference, &pt.vp, &pt.wp, &pt.integrator)?,
        ),
        MetricKind::PuRate => from_pu(
            axis,
            pu_rate(&pt.link, pt.reference, &pt.vp, &pt.wp, &pt.integrator)?,
        ),
        MetricKind::Pop => {
            let spec = pt.outage.expect("pop points carry an outage spec");
            closed(axis, pop(&pt.link, &spec, &pt.wp))
        }
    })
}

fn monte_carlo(pt: &Point, cfg: &McConfig) -> Result<McEstimate> {
    let pd = PerceptualDistribution::new(*pt.link.channel(), pt.wp);
    match pt.metric {
        MetricKind::PuSnr => mc_pu(&snr_metric(&pt.link, pt.reference), &pd, &pt.vp, cfg),
        MetricKind::PuRate => mc_pu(&rate_metric(&pt.link, pt.reference), &pd, &pt.vp, cfg),
        MetricKind::Pop => {
            let spec = pt.outage.expect("pop points carry an outage spec");
            mc_pop(&pt.link, &spec, &pt.wp, cfg)
        }
        other => Err(Error::Scenario(format!(
            "metric {other:?} has no Monte Carlo estimator"
        ))),
    }
}

/// Evaluates grid points in parallel and returns the first failure in grid
/// order, so errors are deterministic too.
fn per_point<T, F>(s: &Scenario, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(f64, &Point) -> Result<T> + Sync,
{
    s.validate()?;
    s.axis
        .grid
        .par_iter()
        .map(|&v| {
            let pt = s.point(v)?;
            f(v, &pt).map_err(|e| s.with_context(v, e))
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

/// Evaluates the scenario's metric at every grid point, in axis order.
pub fn run_scenario(s: &Scenario) -> Result<Vec<SweepRow>> {
    per_point(s, evaluate)
}

/// Compares quadrature against the Monte Carlo oracle at every grid point.
///
/// A point passes when the two agree within three standard errors (plus the
/// quadrature's own error bound, which matters only when the sampled
/// integrand is constant).
pub fn cross_check(s: &Scenario) -> Result<Vec<CrossCheckRow>> {
    if !s.metric.supports_cross_check() {
        return Err(Error::Scenario(format!(
            "cross-check requires pu_snr, pu_rate or pop, not {:?}",
            s.metric
        )));
    }
    let cfg = s.mc_config()?;
    per_point(s, |axis, pt| {
        let q = evaluate(axis, pt)?;
        let m = monte_carlo(pt, &cfg)?;
        let pass = (q.value - m.mean).abs() <= 3.0 * m.std_error + q.err;
        Ok(CrossCheckRow {
            axis,
            quad: q.value,
            quad_err: q.err,
            n_eval: q.n_eval,
            mc: m.mean,
            mc_se: m.std_error,
            samples: m.samples,
            pass,
        })
    })
}

/// `%.12g`-style formatting.
pub fn format_number(x: f64) -> String {
    const DIGITS: usize = 12;
    if x == 0.0 {
        return "0".into();
    }
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{:.*e}", DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= DIGITS as i32 {
        let m = trim_fraction(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_fraction(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn write_sweep_csv<W: Write>(out: &mut W, rows: &[SweepRow]) -> Result<()> {
    writeln!(out, "{SWEEP_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{}",
            format_number(r.axis),
            format_number(r.value),
            format_number(r.err),
            r.n_eval
        )?;
    }
    Ok(())
}

pub fn write_cross_check_csv<W: Write>(out: &mut W, rows: &[CrossCheckRow]) -> Result<()> {
    writeln!(out, "{CROSS_CHECK_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            format_number(r.axis),
            format_number(r.quad),
            format_number(r.quad_err),
            r.n_eval,
            format_number(r.mc),
            format_number(r.mc_se),
            r.samples,
            if r.pass { "pass" } else { "fail" }
        )?;
    }
    Ok(())
}

/// Objective outage probability along a `pop` scenario, for side-by-side
/// plotting with the perceived curve.
pub fn objective_outage(s: &Scenario) -> Result<Vec<SweepRow>> {
    if s.metric != MetricKind::Pop {
        return Err(Error::Scenario(
            "objective outage needs a pop scenario".into(),
        ));
    }
    per_point(s, |axis, pt| {
        let spec = pt.outage.expect("pop points carry an outage spec");
        Ok(closed(axis, outage_probability(&pt.link, &spec)))
    })
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

fn power_grid() -> Vec<f64> {
    // 1 .. 1000 with the 400 and 1000 points used in the discussion of returns
    vec![
        0.0, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0, 200.0, 400.0, 700.0, 1000.0,
    ]
}

fn base(metric: MetricKind, variable: AxisVariable, grid: Vec<f64>, description: &str) -> Scenario {
    Scenario {
        schema: SCHEMA_VERSION.into(),
        description: Some(description.into()),
        metric,
        axis: Axis { variable, grid },
        value_params: ValueSpec::default(),
        weight_params: WeightSpec::default(),
        reference: 4.0,
        mu: 1.0,
        pt_over_n0: 10.0,
        epsilon: 1.0,
        tolerance: DEFAULT_TOLERANCE,
        max_evaluations: DEFAULT_MAX_EVALUATIONS,
        monte_carlo: None,
    }
}

pub const PRESET_NAMES: &[&str] = &[
    "fig2",
    "fig3",
    "fig4",
    "fig5",
    "fig6",
    "fig7",
    "fig7-pcdf",
    "fig7-ppdf",
    "fig8",
];

/// Built-in scenarios behind the standard figures.
///
/// Every value not stated alongside the original figures is an assumption
/// and is spelled out in the preset's description.
pub fn preset(name: &str) -> Option<Scenario> {
    use AxisVariable as A;
    use MetricKind as M;
    let s = match name {
        "fig2" => base(
            M::ValueCurve,
            A::X,
            linspace(0.0, 10.0, 41),
            "value curve; assumed alpha=0.5, lambda_gain=1, lambda_loss=2, reference=5",
        )
        .with_reference(5.0),
        "fig3" => {
            let mut s = base(
                M::ValueCurve,
                A::X,
                linspace(0.0, 10.0, 41),
                "value curve with stronger curvature; assumed alpha=0.88, lambda_gain=1, lambda_loss=2.25, reference=5",
            )
            .with_reference(5.0);
            s.value_params.alpha = 0.88;
            s.value_params.lambda_loss = 2.25;
            s
        }
        "fig4" => base(
            M::ValueCurve,
            A::X,
            linspace(0.0, 10.0, 41),
            "value vs quantity; alpha=0.5, lambda_gain=1, lambda_loss=2 as captioned; reference=2 assumed",
        )
        .with_reference(2.0),
        "fig5" => base(
            M::PuSnr,
            A::PtOverN0,
            power_grid(),
            "PU of SNR, mu=1; assumed alpha=0.5, lambda_gain=1, lambda_loss=2, gamma=1, theta=0.8, reference=4",
        ),
        "fig6" => base(
            M::PuRate,
            A::PtOverN0,
            power_grid(),
            "PU of rate, mu=1; assumed alpha=0.5, lambda_gain=1, lambda_loss=2, gamma=1, theta=0.8, reference=4 bits/s/Hz",
        ),
        "fig7" => {
            let mut s = base(
                M::WeightCurve,
                A::P,
                linspace(0.0, 1.0, 21),
                "Prelec weighting; assumed gamma=1, theta=0.5",
            );
            s.weight_params.theta = 0.5;
            s
        }
        "fig7-pcdf" => {
            let mut s = base(
                M::Pcdf,
                A::S,
                linspace(0.0, 5.0, 51),
                "perceptual CDF of the unit exponential; assumed gamma=1, theta=0.5",
            );
            s.weight_params.theta = 0.5;
            s
        }
        "fig7-ppdf" => {
            let mut s = base(
                M::Ppdf,
                A::S,
                linspace(0.1, 5.0, 50),
                "perceptual PDF of the unit exponential; assumed gamma=1, theta=0.5",
            );
            s.weight_params.theta = 0.5;
            s
        }
        "fig8" => {
            let mut s = base(
                M::Pop,
                A::PtOverN0,
                power_grid().into_iter().filter(|&p| p > 0.0).collect(),
                "perceptual outage, mu=1, epsilon=1; assumed gamma=1, theta=0.5",
            );
            s.weight_params.theta = 0.5;
            s
        }
        _ => return None,
    };
    Some(s)
}

impl Scenario {
    fn with_reference(mut self, reference: f64) -> Self {
        self.reference = reference;
        self
    }
}

//! Globally adaptive Gauss–Kronrod (7/15) quadrature.
//!
//! The interval with the largest error estimate is bisected until the summed
//! estimate drops below the requested absolute tolerance or the evaluation
//! budget runs out. Several segments, each with its own integrand, can share
//! one error budget; this is how split and transformed integrals are summed.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// Default absolute tolerance.
pub const DEFAULT_TOLERANCE: f64 = 1e-8;
/// Default cap on integrand evaluations.
pub const DEFAULT_MAX_EVALUATIONS: usize = 100_000;

const RULE_POINTS: usize = 15;

// Kronrod abscissae on [0, 1]; odd indices are the 7-point Gauss nodes.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Integral estimate with its error bound and cost.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub abs_error: f64,
    pub evaluations: usize,
}

/// One piece of a composite integral.
pub struct Segment<'a> {
    pub lo: f64,
    pub hi: f64,
    pub integrand: &'a (dyn Fn(f64) -> f64 + Sync),
}

impl<'a> Segment<'a> {
    pub fn new(lo: f64, hi: f64, integrand: &'a (dyn Fn(f64) -> f64 + Sync)) -> Self {
        Segment { lo, hi, integrand }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Integrator {
    pub tolerance: f64,
    pub max_evaluations: usize,
}

impl Default for Integrator {
    fn default() -> Self {
        Integrator {
            tolerance: DEFAULT_TOLERANCE,
            max_evaluations: DEFAULT_MAX_EVALUATIONS,
        }
    }
}

struct Piece {
    segment: usize,
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
    abs: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}

impl Eq for Piece {}

impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

struct RuleResult {
    value: f64,
    error: f64,
    abs: f64,
}

fn gauss_kronrod(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64) -> Result<RuleResult> {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];

    let eval = |x: f64| -> Result<f64> {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::domain(format!(
                "integrand is not finite at {x} ({y})"
            )))
        }
    };

    let fc = eval(center)?;
    let mut res_g = fc * WG[3];
    let mut res_k = fc * WGK[7];
    let mut res_abs = res_k.abs();
    for (j, &wg) in WG.iter().enumerate().take(3) {
        let jt = 2 * j + 1;
        let dx = half * XGK[jt];
        let f1 = eval(center - dx)?;
        let f2 = eval(center + dx)?;
        fv1[jt] = f1;
        fv2[jt] = f2;
        res_g += wg * (f1 + f2);
        res_k += WGK[jt] * (f1 + f2);
        res_abs += WGK[jt] * (f1.abs() + f2.abs());
    }
    for j in 0..4 {
        let jt = 2 * j;
        let dx = half * XGK[jt];
        let f1 = eval(center - dx)?;
        let f2 = eval(center + dx)?;
        fv1[jt] = f1;
        fv2[jt] = f2;
        res_k += WGK[jt] * (f1 + f2);
        res_abs += WGK[jt] * (f1.abs() + f2.abs());
    }
    let mean = res_k * 0.5;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let scale = half.abs();
    let value = res_k * half;
    res_abs *= scale;
    res_asc *= scale;
    let mut error = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    Ok(RuleResult {
        value,
        error,
        abs: res_abs,
    })
}

impl Integrator {
    pub fn new(tolerance: f64, max_evaluations: usize) -> Result<Self> {
        if !(tolerance.is_finite() && tolerance > 0.0) {
            return Err(Error::domain(format!(
                "tolerance {tolerance} must be positive and finite"
            )));
        }
        Ok(Integrator {
            tolerance,
            max_evaluations,
        })
    }

    /// Integrates `f` over the finite interval `[lo, hi]`.
    pub fn integrate(
        &self,
        f: &(dyn Fn(f64) -> f64 + Sync),
        lo: f64,
        hi: f64,
    ) -> Result<Quadrature> {
        self.integrate_segments(&[Segment::new(lo, hi, f)])
    }

    /// Integrates the sum of several finite segments under one tolerance.
    ///
    /// The stopping threshold is the requested tolerance, floored at the
    /// double-precision roundoff level of `∫|f|`.
    pub fn integrate_segments(&self, segments: &[Segment<'_>]) -> Result<Quadrature> {
        let mut heap = BinaryHeap::new();
        let mut frozen_value = 0.0;
        let mut frozen_error = 0.0;
        let mut frozen_abs = 0.0;
        let mut evaluations = 0;

        for (idx, seg) in segments.iter().enumerate() {
            if !(seg.lo.is_finite() && seg.hi.is_finite()) {
                return Err(Error::domain(format!(
                    "segment [{}, {}] is not finite",
                    seg.lo, seg.hi
                )));
            }
            if seg.lo == seg.hi {
                continue;
            }
            let r = gauss_kronrod(seg.integrand, seg.lo, seg.hi)?;
            evaluations += RULE_POINTS;
            heap.push(Piece {
                segment: idx,
                lo: seg.lo,
                hi: seg.hi,
                value: r.value,
                error: r.error,
                abs: r.abs,
            });
        }

        loop {
            let (mut value, mut error, mut abs) = (frozen_value, frozen_error, frozen_abs);
            for p in heap.iter() {
                value += p.value;
                error += p.error;
                abs += p.abs;
            }
            let threshold = self.tolerance.max(100.0 * f64::EPSILON * abs);
            if error <= threshold {
                return Ok(Quadrature {
                    value,
                    abs_error: error,
                    evaluations: evaluations.max(1),
                });
            }
            let exhausted = evaluations + 2 * RULE_POINTS > self.max_evaluations;
            let Some(worst) = heap.pop().filter(|_| !exhausted) else {
                return Err(Error::ToleranceNotMet {
                    achieved: error,
                    requested: self.tolerance,
                    evaluations,
                });
            };
            let mid = 0.5 * (worst.lo + worst.hi);
            if mid <= worst.lo || mid >= worst.hi {
                // interval cannot be split further in floating point
                frozen_value += worst.value;
                frozen_error += worst.error;
                frozen_abs += worst.abs;
                continue;
            }
            let f = segments[worst.segment].integrand;
            for (lo, hi) in [(worst.lo, mid), (mid, worst.hi)] {
                let r = gauss_kronrod(f, lo, hi)?;
                heap.push(Piece {
                    segment: worst.segment,
                    lo,
                    hi,
                    value: r.value,
                    error: r.error,
                    abs: r.abs,
                });
            }
            evaluations += 2 * RULE_POINTS;
        }
    }
}

//! Classical bound curves in the (delta, R) plane and code classification.
//!
//! All curves are expressed through the q-ary entropy
//!
//! ```text
//! H_q(x) = x log_q(q - 1) - x log_q(x) - (1 - x) log_q(1 - x)
//! ```
//!
//! with the convention 0 log 0 = 0, so H_q(0) = 0 and H_q((q-1)/q) = 1.
//!
//! * Gilbert-Varshamov (lower): R = 1 - H_q(delta), and 0 past the
//!   Plotkin radius (q-1)/q where no positive-rate codes exist.
//! * Hamming (upper): R = 1 - H_q(delta / 2).
//! * Singleton (upper, asymptotic): R = 1 - delta, checked with a
//!   configurable finite-length slack.
//! * Plotkin (upper): rate 0 for delta >= (q-1)/q.
//!
//! [`classify`] places a point against the bounds and returns the verdict
//! together with one certificate per bound, whether it fired or not.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::code::Alphabet;
use crate::Rational;

/// Tolerance for floating-point comparisons against bound values. Exact
/// rational comparisons are used instead wherever one is available.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

/// q-ary entropy H_q(x) for x in [0, 1].
pub fn entropy(x: f64, alphabet: Alphabet) -> Result<f64, BoundsError> {
    if !(0.0..=1.0).contains(&x) {
        return Err(BoundsError::Domain {
            what: "entropy argument",
            value: x,
        });
    }
    let q = alphabet.size() as f64;
    // log_q(y) = log2(y) / log2(q); for q = 2 the divisor is exactly 1.
    let log2_q = libm::log2(q);
    let xlog = |p: f64| {
        if p == 0.0 {
            0.0
        } else {
            p * (libm::log2(p) / log2_q)
        }
    };
    Ok(x * (libm::log2(q - 1.0) / log2_q) - xlog(x) - xlog(1.0 - x))
}

/// Plotkin radius (q-1)/q as an exact rational.
pub fn plotkin_radius(alphabet: Alphabet) -> Rational {
    Rational::new(alphabet.size() as u64 - 1, alphabet.size() as u64)
}

/// Gilbert-Varshamov curve value at delta: 1 - H_q(delta) below the Plotkin
/// radius, 0 at and beyond it.
pub fn gv_value(delta: f64, alphabet: Alphabet) -> Result<f64, BoundsError> {
    let radius = ratio_to_f64(plotkin_radius(alphabet));
    if delta >= radius {
        if delta > 1.0 {
            return Err(BoundsError::Domain {
                what: "delta",
                value: delta,
            });
        }
        return Ok(0.0);
    }
    let value = 1.0 - entropy(delta, alphabet)?;
    Ok(if value < 0.0 { 0.0 } else { value })
}

/// Hamming (sphere-packing) curve value at delta: 1 - H_q(delta / 2).
pub fn hamming_value(delta: f64, alphabet: Alphabet) -> Result<f64, BoundsError> {
    if !(0.0..=1.0).contains(&delta) {
        return Err(BoundsError::Domain {
            what: "delta",
            value: delta,
        });
    }
    let value = 1.0 - entropy(delta / 2.0, alphabet)?;
    Ok(if value < 0.0 { 0.0 } else { value })
}

/// Asymptotic Singleton line R = 1 - delta.
pub fn singleton_value(delta: f64) -> Result<f64, BoundsError> {
    if !(0.0..=1.0).contains(&delta) {
        return Err(BoundsError::Domain {
            what: "delta",
            value: delta,
        });
    }
    Ok(1.0 - delta)
}

/// True when delta lies at or beyond the Plotkin radius (q-1)/q, where
/// positive asymptotic rate is impossible. Exact rational comparison.
pub fn plotkin_exceeded(delta: Rational, alphabet: Alphabet) -> bool {
    delta >= plotkin_radius(alphabet)
}

/// A code's position in the (delta, R) plane.
#[derive(Clone, Debug, PartialEq)]
pub struct CodePoint {
    pub relative_distance: Rational,
    pub rate: f64,
    pub alphabet: Alphabet,
}

impl CodePoint {
    pub fn new(
        relative_distance: Rational,
        rate: f64,
        alphabet: Alphabet,
    ) -> Result<CodePoint, BoundsError> {
        if relative_distance > Rational::from_integer(1) {
            return Err(BoundsError::Domain {
                what: "delta",
                value: ratio_to_f64(relative_distance),
            });
        }
        if !(0.0..=1.0).contains(&rate) {
            return Err(BoundsError::Domain {
                what: "rate",
                value: rate,
            });
        }
        Ok(CodePoint {
            relative_distance,
            rate,
            alphabet,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    Plotkin,
    Hamming,
    Singleton,
    GilbertVarshamov,
}

impl BoundKind {
    pub fn name(&self) -> &'static str {
        match self {
            BoundKind::Plotkin => "plotkin",
            BoundKind::Hamming => "hamming",
            BoundKind::Singleton => "singleton",
            BoundKind::GilbertVarshamov => "gilbert_varshamov",
        }
    }
}

/// One evaluated inequality. `margin` is positive when the inequality fired;
/// for the three upper bounds firing means the point is impossible
/// asymptotically, for Gilbert-Varshamov it means the point sits strictly
/// below the curve.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub bound: BoundKind,
    pub inequality: String,
    pub margin: f64,
    pub fired: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// At least one upper bound is violated: no asymptotic family of codes
    /// reaches this point.
    AboveAsymptotic,
    /// Strictly below the Gilbert-Varshamov curve.
    BelowGv,
    Indeterminate,
}

/// Verdict plus every certificate that was evaluated to reach it.
#[derive(Clone, Debug, PartialEq)]
pub struct RegionClassification {
    pub verdict: Verdict,
    pub certificates: Vec<Certificate>,
    pub notes: Vec<String>,
}

/// Classifies a point against the four bounds.
///
/// `singleton_slack` loosens the asymptotic Singleton test to
/// R + delta > 1 + slack; pass 1/n for a length-n code, 0 when no length is
/// known. Requires rate > 0.
pub fn classify(
    point: &CodePoint,
    singleton_slack: f64,
) -> Result<RegionClassification, BoundsError> {
    if point.rate <= 0.0 {
        return Err(BoundsError::Domain {
            what: "rate (must be positive)",
            value: point.rate,
        });
    }
    let delta = ratio_to_f64(point.relative_distance);
    let rate = point.rate;
    let q = point.alphabet;

    let radius = plotkin_radius(q);
    let plotkin_fired = plotkin_exceeded(point.relative_distance, q);
    let plotkin = Certificate {
        bound: BoundKind::Plotkin,
        inequality: format!(
            "delta >= (q-1)/q: {} vs {}",
            point.relative_distance, radius
        ),
        margin: delta - ratio_to_f64(radius),
        fired: plotkin_fired,
    };

    let ham = hamming_value(delta, q)?;
    let hamming = Certificate {
        bound: BoundKind::Hamming,
        inequality: format!("R > 1 - H_q(delta/2): {rate} vs {ham}"),
        margin: rate - ham,
        fired: rate > ham + FLOAT_TOLERANCE,
    };

    let singleton_line = 1.0 + singleton_slack;
    let singleton = Certificate {
        bound: BoundKind::Singleton,
        inequality: format!(
            "R + delta > 1 + slack: {} vs {singleton_line}",
            rate + delta
        ),
        margin: rate + delta - singleton_line,
        fired: rate + delta > singleton_line + FLOAT_TOLERANCE,
    };

    let gv = gv_value(delta, q)?;
    let on_gv_curve = (rate - gv).abs() <= FLOAT_TOLERANCE;
    let gilbert = Certificate {
        bound: BoundKind::GilbertVarshamov,
        inequality: format!("R < 1 - H_q(delta): {rate} vs {gv}"),
        margin: gv - rate,
        fired: rate < gv - FLOAT_TOLERANCE,
    };

    let verdict = if plotkin.fired || hamming.fired || singleton.fired {
        Verdict::AboveAsymptotic
    } else if gilbert.fired {
        Verdict::BelowGv
    } else {
        Verdict::Indeterminate
    };
    let mut notes = Vec::new();
    if on_gv_curve {
        notes.push(String::from(
            "rate coincides with the Gilbert-Varshamov value at this delta",
        ));
    }

    Ok(RegionClassification {
        verdict,
        certificates: Vec::from([plotkin, hamming, singleton, gilbert]),
        notes,
    })
}

/// One row of a sampled bound-curve table.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveSample {
    pub delta: f64,
    pub gv: f64,
    pub hamming: f64,
    pub singleton: f64,
    /// True where the Plotkin bound forces rate 0.
    pub plotkin_zero: bool,
}

/// Bound curves sampled on an even grid over [0, 1].
#[derive(Clone, Debug, PartialEq)]
pub struct BoundCurves {
    pub alphabet: Alphabet,
    pub samples: Vec<CurveSample>,
}

/// Samples all four curves on `samples` evenly spaced points of [0, 1],
/// endpoints included. Needs at least two samples.
pub fn emit_bound_curves(
    alphabet: Alphabet,
    samples: usize,
) -> Result<BoundCurves, BoundsError> {
    if samples < 2 {
        return Err(BoundsError::Domain {
            what: "sample count (need at least 2)",
            value: samples as f64,
        });
    }
    let steps = (samples - 1) as u64;
    let q = alphabet.size() as u64;
    let mut rows = Vec::with_capacity(samples);
    for i in 0..samples as u64 {
        let delta = i as f64 / steps as f64;
        rows.push(CurveSample {
            delta,
            gv: gv_value(delta, alphabet)?,
            hamming: hamming_value(delta, alphabet)?,
            singleton: singleton_value(delta)?,
            // exact on the rational grid i/steps
            plotkin_zero: i * q >= (q - 1) * steps,
        });
    }
    Ok(BoundCurves {
        alphabet,
        samples: rows,
    })
}

pub(crate) fn ratio_to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

#[derive(Clone, Debug, PartialEq)]
pub enum BoundsError {
    Domain { what: &'static str, value: f64 },
}

impl fmt::Display for BoundsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundsError::Domain { what, value } => {
                write!(f, "{what} out of range: {value}")
            }
        }
    }
}

impl core::error::Error for BoundsError {}

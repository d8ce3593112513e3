//! Nondecreasing unbounded sequences viewed through their reciprocal gaps.

use serde::{Deserialize, Serialize};

use crate::fractal::{linear_fit, PlanarSet, RadialSpan};
use crate::geometry::Point2;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum StringError {
    #[error("term {0} is not a positive finite number")]
    NonPositive(usize),
    #[error("sequence decreases at term {0}")]
    Decreasing(usize),
    #[error("need at least {needed} terms, got {got}")]
    TooShort { needed: usize, got: usize },
    #[error("invalid generator: {0}")]
    InvalidGenerator(&'static str),
}

/// Named sequence rules.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SequenceGenerator {
    /// `a_k = k^alpha`.
    Power { alpha: f64 },
    /// `a_k = ratio^k`.
    Geometric { ratio: f64 },
}

impl SequenceGenerator {
    pub fn validate(&self) -> Result<(), StringError> {
        match *self {
            SequenceGenerator::Power { alpha } if !(alpha > 0.0 && alpha.is_finite()) => {
                Err(StringError::InvalidGenerator("power needs alpha > 0"))
            }
            SequenceGenerator::Geometric { ratio } if !(ratio > 1.0 && ratio.is_finite()) => {
                Err(StringError::InvalidGenerator("geometric needs ratio > 1"))
            }
            _ => Ok(()),
        }
    }

    /// `a_k`, 1-based.
    pub fn term(&self, k: usize) -> f64 {
        match *self {
            SequenceGenerator::Power { alpha } => (k as f64).powf(alpha),
            SequenceGenerator::Geometric { ratio } => ratio.powi(k as i32),
        }
    }

    /// `a_k^-1 - a_(k+1)^-1`, computed without cancellation where possible.
    pub fn gap(&self, k: usize) -> f64 {
        match *self {
            SequenceGenerator::Power { alpha } => {
                let k = k as f64;
                // k^-a (1 - (1 + 1/k)^-a)
                k.powf(-alpha) * -(-alpha * (1.0 / k).ln_1p()).exp_m1()
            }
            SequenceGenerator::Geometric { ratio } => ratio.powi(-(k as i32)) * (1.0 - 1.0 / ratio),
        }
    }

    /// The first `n` terms.
    pub fn prefix(&self, n: usize) -> Vec<f64> {
        (1..=n).map(|k| self.term(k)).collect()
    }

    /// The first `n` gaps.
    pub fn gaps(&self, n: usize) -> Vec<f64> {
        (1..=n).map(|k| self.gap(k)).collect()
    }

    /// `1/(1+alpha)` for power sequences, `0` for geometric ones.
    pub fn exact_dimension(&self) -> f64 {
        match *self {
            SequenceGenerator::Power { alpha } => 1.0 / (1.0 + alpha),
            SequenceGenerator::Geometric { .. } => 0.0,
        }
    }
}

fn check(a: &[f64]) -> Result<(), StringError> {
    for (i, &x) in a.iter().enumerate() {
        if !(x > 0.0 && x.is_finite()) {
            return Err(StringError::NonPositive(i + 1));
        }
        if i > 0 && x < a[i - 1] {
            return Err(StringError::Decreasing(i + 1));
        }
    }
    Ok(())
}

/// `mu_k = a_k^-1 - a_(k+1)^-1` for `k = 1..len-1`.
pub fn gaps(a: &[f64]) -> Result<Vec<f64>, StringError> {
    check(a)?;
    Ok(a.windows(2).map(|w| 1.0 / w[0] - 1.0 / w[1]).collect())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonotoneCheck {
    pub monotone: bool,
    /// 1-based `k` of the first violated inequality.
    pub first_violation: Option<usize>,
}

/// Tests `a_(k+1)/a_k + a_(k+1)/a_(k+2) >= 2` for every `k` on the prefix,
/// allowing four ulps of rounding.
pub fn is_monotone_string(a: &[f64]) -> Result<MonotoneCheck, StringError> {
    if a.len() < 3 {
        return Err(StringError::TooShort { needed: 3, got: a.len() });
    }
    check(a)?;
    let slack = 4.0 * f64::EPSILON * 2.0;
    let first_violation = a
        .windows(3)
        .position(|w| w[1] / w[0] + w[1] / w[2] < 2.0 - slack)
        .map(|i| i + 1);
    Ok(MonotoneCheck { monotone: first_violation.is_none(), first_violation })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StringDimension {
    /// `1/s` where `mu_k ~ k^-s`; `None` when the gaps do not decay.
    pub dimension: Option<f64>,
    pub exponent: f64,
    pub r2: f64,
    /// Index range used in the fit.
    pub k_min: usize,
    pub k_max: usize,
    pub decaying: bool,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub warnings: Vec<String>,
}

/// Fits `log mu_k` against `log k` over the last two decades of positive
/// gaps and returns the reciprocal decay exponent.
pub fn string_dimension_from_gaps(mu: &[f64]) -> Result<StringDimension, StringError> {
    let last = mu.iter().rposition(|&m| m > 0.0 && m.is_finite()).map_or(0, |i| i + 1);
    let mut warnings = Vec::new();
    if last < mu.len() {
        warnings.push(format!("gaps vanish beyond k = {last}; fit restricted to the positive range"));
    }
    if last < 10 {
        return Err(StringError::TooShort { needed: 10, got: last });
    }
    let k_min = (last / 100).max(1);
    let (xs, ys): (Vec<f64>, Vec<f64>) = (k_min..=last)
        .filter(|&k| mu[k - 1] > 0.0)
        .map(|k| ((k as f64).ln(), mu[k - 1].ln()))
        .unzip();
    let fit = linear_fit(&xs, &ys).ok_or(StringError::TooShort { needed: 2, got: xs.len() })?;
    let s = -fit.slope;
    let decaying = s > 0.0;
    if decaying && xs.len() >= 20 {
        // compare the two halves of the window
        let h = xs.len() / 2;
        if let (Some(a), Some(b)) = (linear_fit(&xs[..h], &ys[..h]), linear_fit(&xs[h..], &ys[h..])) {
            if ((a.slope - b.slope) / fit.slope).abs() > 0.1 {
                warnings.push(format!(
                    "irregular gaps: local exponents {:.4} and {:.4}; upper and lower dimensions may differ",
                    -a.slope, -b.slope
                ));
            }
        }
    }
    if !decaying {
        warnings.push("gaps do not decay".into());
    }
    Ok(StringDimension {
        dimension: decaying.then(|| 1.0 / s),
        exponent: s,
        r2: fit.r_squared,
        k_min,
        k_max: last,
        decaying,
        warnings,
    })
}

pub fn string_dimension(a: &[f64]) -> Result<StringDimension, StringError> {
    string_dimension_from_gaps(&gaps(a)?)
}

pub const DEFAULT_PREFIX: usize = 100_000;

/// The points `(a_k, 0)` for `k <= N` and the ray beyond `a_N`.
pub fn string_point_set(a: &[f64]) -> Result<PlanarSet, StringError> {
    check(a)?;
    if a.len() < 2 {
        return Err(StringError::TooShort { needed: 2, got: a.len() });
    }
    let n = a.len();
    let points = a[..n - 1].iter().map(|&x| Point2::new(x, 0.0)).collect();
    Ok(PlanarSet {
        points,
        spans: vec![RadialSpan::new(0.0, a[n - 1], f64::INFINITY)],
        ..Default::default()
    })
}

/// Smallest sensible scale for [`string_point_set`]: the last gap, so that
/// the tail ray stands in for points already merged at every scale.
pub fn string_eps_min(a: &[f64]) -> Result<f64, StringError> {
    let mu = gaps(a)?;
    let last = mu.last().copied().unwrap_or(0.0);
    Ok(last.max(1e-10))
}

use serde::{Deserialize, Serialize};

use crate::geometry::Point2;

use super::boxcount::box_counts;
use super::fit::{fit_dimension, median, DimensionEstimate};
use super::sausage::{sausage_areas_with, Method, SausageOptions, SausageProfile};
use super::set::PlanarSet;
use super::FractalError;

/// Profile of a bounded set by the chosen method.
pub fn profile(set: &PlanarSet, eps: &[f64], method: Method) -> Result<SausageProfile, FractalError> {
    match method {
        Method::SausageGrid => sausage_areas_with(set, eps, &SausageOptions::default()),
        Method::BoxCount => box_counts(set, eps),
    }
}

/// Box dimension of a bounded planar set.
pub fn dim_bounded(set: &PlanarSet, eps: &[f64]) -> Result<DimensionEstimate, FractalError> {
    dim_bounded_with(set, eps, Method::SausageGrid)
}

pub fn dim_bounded_with(set: &PlanarSet, eps: &[f64], method: Method) -> Result<DimensionEstimate, FractalError> {
    if set.is_empty() {
        return Err(FractalError::EmptySet);
    }
    fit_dimension(&profile(set, eps, method)?, 2)
}

/// Box dimension of a (possibly unbounded) set through its image under
/// inversion about the origin.
pub fn dim_unbounded(set: &PlanarSet, eps: &[f64]) -> Result<DimensionEstimate, FractalError> {
    dim_unbounded_about(set, Point2::ORIGIN, eps)
}

/// As [`dim_unbounded`], inverting about `w` instead of the origin.
pub fn dim_unbounded_about(set: &PlanarSet, w: Point2, eps: &[f64]) -> Result<DimensionEstimate, FractalError> {
    if set.is_empty() {
        return Err(FractalError::EmptySet);
    }
    if !(set.distance_from(w) > 0.0) {
        return Err(FractalError::TouchesCenter);
    }
    dim_bounded(&set.inverted_about(w)?, eps)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneralEstimate {
    /// The larger of the two parts.
    pub combined: DimensionEstimate,
    /// Estimate for the part inside the closed unit disc.
    pub inner: Option<DimensionEstimate>,
    /// Estimate for the part outside, through inversion.
    pub outer: Option<DimensionEstimate>,
}

/// Box dimension of an arbitrary set: the part in the unit disc is
/// estimated directly, the rest through inversion, and the larger value wins.
pub fn dim_general(set: &PlanarSet, eps: &[f64]) -> Result<GeneralEstimate, FractalError> {
    if set.is_empty() {
        return Err(FractalError::EmptySet);
    }
    set.check_finite()?;
    let (a1, a2) = set.split_at_unit_circle()?;
    let inner = if a1.is_empty() { None } else { Some(dim_bounded(&a1, eps)?) };
    let outer = if a2.is_empty() { None } else { Some(dim_unbounded(&a2, eps)?) };
    let combined = match (&inner, &outer) {
        (Some(i), Some(o)) => {
            if o.dimension > i.dimension {
                o.clone()
            } else {
                i.clone()
            }
        }
        (Some(i), None) => i.clone(),
        (None, Some(o)) => o.clone(),
        (None, None) => return Err(FractalError::EmptySet),
    };
    Ok(GeneralEstimate { combined, inner, outer })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContentEstimate {
    pub d: f64,
    /// Median of `|A_eps| / eps^(2 - d)`.
    pub content: f64,
    /// `max / min` of the same ratios; 1 means perfectly converged.
    pub spread: f64,
    pub ratios: Vec<(f64, f64)>,
}

impl ContentEstimate {
    /// Relative width of the window, `spread - 1`.
    pub fn relative_spread(&self) -> f64 {
        self.spread - 1.0
    }
}

/// `d`-dimensional Minkowski content of a bounded planar set.
pub fn minkowski_content(set: &PlanarSet, d: f64, eps: &[f64]) -> Result<ContentEstimate, FractalError> {
    if !(d > 0.0 && d <= 2.0) {
        return Err(FractalError::InvalidDimension(d));
    }
    let p = sausage_areas_with(set, eps, &SausageOptions::default())?;
    Ok(content_from_profile(&p, d))
}

pub fn content_from_profile(p: &SausageProfile, d: f64) -> ContentEstimate {
    let ratios: Vec<(f64, f64)> = p.samples.iter().map(|&(e, a)| (e, a / e.powf(2.0 - d))).collect();
    let lo = ratios.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);
    let hi = ratios.iter().map(|r| r.1).fold(0.0, f64::max);
    ContentEstimate {
        d,
        content: median(ratios.iter().map(|r| r.1).collect()),
        spread: hi / lo,
        ratios,
    }
}

//! Box dimension and Minkowski content estimation.

mod boxcount;
mod estimate;
mod fit;
mod sausage;
mod schedule;
mod set;

pub use boxcount::{box_count, box_counts};
pub use estimate::{
    content_from_profile, dim_bounded, dim_bounded_with, dim_general, dim_unbounded, dim_unbounded_about,
    minkowski_content, profile, ContentEstimate, GeneralEstimate,
};
pub use fit::{fit_dimension, linear_fit, DimensionEstimate, LinearFit, MIN_SCALES};
pub use sausage::{
    check_sampling, min_sampling_eps, sausage_area, sausage_areas, sausage_areas_with, Method, SausageOptions, SausageProfile,
    ROWS_PER_EPS,
};
pub use schedule::{EpsSchedule, DEFAULT_SCALES};
pub use set::{BoundingBox, PlanarSet, RadialSpan};

use crate::geometry::GeometryError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FractalError {
    #[error(
        "polyline {polyline} is under-sampled at segment {segment} (length {gap:.3e}); \
         resample with max gap <= {required:.3e}"
    )]
    UnderSampled { polyline: usize, segment: usize, gap: f64, required: f64 },
    #[error("grid work {needed} row intervals exceeds budget {budget}; raise eps_min")]
    Resource { needed: u64, budget: u64 },
    #[error("empty set")]
    EmptySet,
    #[error("set is unbounded; estimate it through inversion")]
    Unbounded,
    #[error("set touches the inversion center")]
    TouchesCenter,
    #[error("need at least {MIN_SCALES} scales, got {0}")]
    TooFewScales(usize),
    #[error("degenerate profile (zero or non-finite areas)")]
    DegenerateProfile,
    #[error("invalid scales: {0}")]
    InvalidEps(&'static str),
    #[error("dimension {0} outside (0, 2]")]
    InvalidDimension(f64),
    #[error("fitted dimension {0} is outside the ambient range")]
    DimensionOutOfRange(f64),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

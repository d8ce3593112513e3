//! Points, inversion, sampled curves and sphere projections.

mod curve;
mod nucleus;
mod point;
mod region;
mod sphere;

pub use curve::{CoordSystem, SampledCurve, Vertices};
pub use nucleus::{truncate_at_nucleus, turn_spacing, Limit};
pub use point::{invert_about, Invert, Point2, Point3, Polar};
pub use region::Region;
pub use sphere::{
    disc_project, disc_project_curve, poincare_disc_curve, poincare_project, poincare_project_plane,
    poincare_project_plane_via_inverse, poincare_project_polar, project_curve, riemann_project,
    riemann_project_inverted, riemann_radial_map, CurveProjection, SphereKind, SpherePoint,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeometryError {
    #[error("inversion at the origin (or of a non-finite point) is undefined")]
    InversionAtOrigin,
    #[error("unsupported: {0}")]
    Unsupported(&'static str),
    #[error("curve is not planar")]
    NotPlanar,
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("curve needs at least 2 points, got {0}")]
    TooFewPoints(usize),
    #[error("non-finite coordinate at vertex {0}")]
    NonFinite(usize),
    #[error("vertex {0} repeats its predecessor")]
    RepeatedPoint(usize),
    #[error("negative radius at vertex {0}")]
    NegativeRadius(usize),
    #[error("angle is not strictly monotone at vertex {0}")]
    AngleNotMonotone(usize),
    #[error("point is off the sphere (relative defect {0:e})")]
    OffSphere(f64),
    #[error("curve ends before its turns are closer than eps_min/2; extend it")]
    NucleusNotReached,
}

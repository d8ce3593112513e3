//! Box dimension of planar spirals and related sets.

pub mod analysis;
pub mod dynamics;
pub mod fractal;
pub mod geometry;
pub mod io;
pub mod models;
pub mod strings;

pub use fractal::{DimensionEstimate, FractalError, PlanarSet, SausageProfile};
pub use geometry::{GeometryError, Point2, Point3, Polar, Region, SampledCurve};

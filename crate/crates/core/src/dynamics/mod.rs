//! Planar vector fields, their inversion, polar normal forms and orbit
//! integration.

mod field;
mod ode;
mod polar;
mod poly;
mod systems;
mod trajectory;

pub use field::{
    closure_field, involution_deviation, invert_field, linear_combination, max_relative_deviation, polynomial_field,
    polynomialize, polynomialize_table, positively_parallel, weak_focus_invert, ClosureField, Field, VectorField2D,
};
pub use ode::{
    integrate_cartesian, integrate_polar, CartesianOptions, PolarOptions, DEFAULT_REVOLUTIONS, DEFAULT_RHO_CEILING,
    DEFAULT_RHO_FLOOR,
};
pub use polar::{multiplicity, real_roots, LimitCycle, PolarSystem, RadialPolynomial, TimeDirection};
pub use poly::{Poly2, PolynomialField};
pub use systems::{
    damped, damped_inverted, damped_inverted_polynomial, hopf, hopf_inverted, hopf_inverted_polynomial,
    is_rotation_like, lienard, lienard_inverted, rotation, rx_gamma_g, rx_gamma_g_inverted, SingularEnd, SystemSpec,
};
pub use trajectory::{extract_arc, Solver, Termination, Trajectory, Window};

use crate::geometry::GeometryError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DynamicsError {
    #[error("field evaluated outside its domain at ({x}, {y})")]
    Domain { x: f64, y: f64 },
    #[error("non-finite rate after phi = {phi}, rho = {rho}")]
    NonFinite { phi: f64, rho: f64 },
    #[error("step size underflow at t = {t}, x = ({x}, {y})")]
    StepUnderflow { t: f64, x: f64, y: f64 },
    #[error("step limit reached at t = {t}, x = ({x}, {y})")]
    StepLimit { t: f64, x: f64, y: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("trajectory does not enter the window")]
    EmptyWindow,
    #[error("angle is not monotone along the arc")]
    NotMonotone,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

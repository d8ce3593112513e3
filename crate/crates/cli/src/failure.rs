//! Exit codes: 0 success, 2 usage, 3 estimator precondition, 4 numerical failure.

use boxdim_core::analysis::AnalysisError;
use boxdim_core::dynamics::DynamicsError;
use boxdim_core::io::IoError;
use boxdim_core::models::ModelError;
use boxdim_core::strings::StringError;
use boxdim_core::{FractalError, GeometryError};

pub const USAGE: u8 = 2;
pub const PRECONDITION: u8 = 3;
pub const NUMERICAL: u8 = 4;

/// A problem with the invocation itself.
#[derive(Debug)]
pub struct Usage(pub String);

impl std::error::Error for Usage {}

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(Usage(msg.into()))
}

fn fractal_code(e: &FractalError) -> u8 {
    match e {
        FractalError::DegenerateProfile | FractalError::DimensionOutOfRange(_) => NUMERICAL,
        FractalError::InvalidEps(_) | FractalError::TooFewScales(_) | FractalError::InvalidDimension(_) => USAGE,
        _ => PRECONDITION,
    }
}

fn dynamics_code(e: &DynamicsError) -> u8 {
    match e {
        DynamicsError::InvalidParameter(_) => USAGE,
        DynamicsError::EmptyWindow | DynamicsError::NotMonotone | DynamicsError::Geometry(_) => PRECONDITION,
        _ => NUMERICAL,
    }
}

pub fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.is::<Usage>() {
            return USAGE;
        }
        if let Some(e) = cause.downcast_ref::<AnalysisError>() {
            return match e {
                AnalysisError::Fractal(f) => fractal_code(f),
                AnalysisError::Dynamics(d) => dynamics_code(d),
                AnalysisError::Model(ModelError::OutOfRange(_)) => USAGE,
                e if e.is_precondition() => PRECONDITION,
                _ => NUMERICAL,
            };
        }
        if let Some(e) = cause.downcast_ref::<FractalError>() {
            return fractal_code(e);
        }
        if let Some(e) = cause.downcast_ref::<DynamicsError>() {
            return dynamics_code(e);
        }
        if let Some(e) = cause.downcast_ref::<ModelError>() {
            return match e {
                ModelError::OutOfRange(_) => USAGE,
                _ => PRECONDITION,
            };
        }
        if let Some(e) = cause.downcast_ref::<StringError>() {
            return match e {
                StringError::InvalidGenerator(_) => USAGE,
                _ => PRECONDITION,
            };
        }
        if cause.is::<GeometryError>() {
            return PRECONDITION;
        }
        if cause.is::<IoError>() || cause.is::<serde_json::Error>() {
            return USAGE;
        }
    }
    NUMERICAL
}

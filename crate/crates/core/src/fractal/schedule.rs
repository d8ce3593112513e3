use serde::{Deserialize, Serialize};

use super::FractalError;

pub const DEFAULT_SCALES: usize = 12;

/// Geometric list of scales from `eps_max` down to `eps_min`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EpsSchedule {
    pub eps_min: f64,
    pub eps_max: f64,
    pub num_scales: usize,
}

impl EpsSchedule {
    /// `num_scales` values with ratio `2^(-1/2)` ending at `eps_min`.
    pub fn from_min(eps_min: f64, num_scales: usize) -> Self {
        let eps_max = eps_min * 2f64.powf(0.5 * (num_scales.max(1) - 1) as f64);
        EpsSchedule { eps_min, eps_max, num_scales }
    }

    pub fn between(eps_min: f64, eps_max: f64, num_scales: usize) -> Result<Self, FractalError> {
        if !(eps_min > 0.0 && eps_max > eps_min && eps_max.is_finite()) {
            return Err(FractalError::InvalidEps("need 0 < eps_min < eps_max"));
        }
        if num_scales < 2 {
            return Err(FractalError::TooFewScales(num_scales));
        }
        Ok(EpsSchedule { eps_min, eps_max, num_scales })
    }

    /// Decreasing list of scales.
    pub fn values(&self) -> Vec<f64> {
        let n = self.num_scales;
        if n == 1 {
            return vec![self.eps_min];
        }
        let ratio = (self.eps_min / self.eps_max).ln() / (n - 1) as f64;
        (0..n)
            .map(|k| {
                if k == n - 1 {
                    self.eps_min
                } else {
                    self.eps_max * (ratio * k as f64).exp()
                }
            })
            .collect()
    }
}

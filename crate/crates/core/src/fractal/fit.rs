use serde::{Deserialize, Serialize};

use super::sausage::{Method, SausageProfile};
use super::FractalError;

pub const MIN_SCALES: usize = 5;
const R2_WARNING: f64 = 0.98;

/// Ordinary least squares `y = slope x + intercept`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

pub fn linear_fit(xs: &[f64], ys: &[f64]) -> Option<LinearFit> {
    let n = xs.len();
    if n < 2 || n != ys.len() {
        return None;
    }
    let nf = n as f64;
    let mx = xs.iter().sum::<f64>() / nf;
    let my = ys.iter().sum::<f64>() / nf;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut syy = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    if !(sxx > 0.0) {
        return None;
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| {
            let r = y - (slope * x + intercept);
            r * r
        })
        .sum();
    let r_squared = if syy > 0.0 { (1.0 - ss_res / syy).clamp(0.0, 1.0) } else { 1.0 };
    Some(LinearFit { slope, intercept, r_squared })
}

pub(crate) fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DimensionEstimate {
    pub dimension: f64,
    /// Median of `|A_eps| / eps^(n - d)` at the fitted `d`.
    #[serde(rename = "content")]
    pub content_at_d: Option<f64>,
    pub eps_min: f64,
    pub eps_max: f64,
    pub num_scales: usize,
    #[serde(rename = "r2")]
    pub r_squared: f64,
    pub method: Method,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl DimensionEstimate {
    pub fn eps_range(&self) -> (f64, f64) {
        (self.eps_min, self.eps_max)
    }
}

/// Dimension `n - slope` from the log-log regression of area against eps.
pub fn fit_dimension(profile: &SausageProfile, ambient_dim: u32) -> Result<DimensionEstimate, FractalError> {
    if profile.len() < MIN_SCALES {
        return Err(FractalError::TooFewScales(profile.len()));
    }
    if profile.areas().any(|a| !(a > 0.0) || !a.is_finite()) {
        return Err(FractalError::DegenerateProfile);
    }
    let xs: Vec<f64> = profile.eps().map(f64::ln).collect();
    let ys: Vec<f64> = profile.areas().map(f64::ln).collect();
    let fit = linear_fit(&xs, &ys).ok_or(FractalError::DegenerateProfile)?;
    let n = f64::from(ambient_dim);
    let dimension = n - fit.slope;
    if !(dimension >= -0.1 && dimension <= n + 0.1) {
        return Err(FractalError::DimensionOutOfRange(dimension));
    }
    let content = median(profile.samples.iter().map(|&(e, a)| a / e.powf(n - dimension)).collect());
    let mut warnings = Vec::new();
    if fit.r_squared < R2_WARNING {
        warnings.push(format!("log-log fit r2 = {:.4} is below {R2_WARNING}", fit.r_squared));
    }
    let eps_min = profile.eps().fold(f64::INFINITY, f64::min);
    let eps_max = profile.eps().fold(0.0, f64::max);
    Ok(DimensionEstimate {
        dimension,
        content_at_d: Some(content),
        eps_min,
        eps_max,
        num_scales: profile.len(),
        r_squared: fit.r_squared,
        method: profile.method,
        warnings,
    })
}

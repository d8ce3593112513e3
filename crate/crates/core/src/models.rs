//! Comparison spirals and closed-form dimension and content values.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::geometry::{truncate_at_nucleus, GeometryError, Limit, Polar, SampledCurve};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ModelError {
    #[error("parameter out of range: {0}")]
    OutOfRange(&'static str),
    #[error("spiral does not reach its nucleus before phi = {0:e}")]
    TooLong(f64),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// `r = c phi^(-alpha)`, accumulating at the origin.
    In,
    /// `r = c phi^alpha`, tending to infinity.
    Out,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Outside,
    Inside,
}

impl Side {
    fn sign(self) -> f64 {
        match self {
            Side::Outside => 1.0,
            Side::Inside => -1.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpiralKind {
    PowerFocus { alpha: f64, orientation: Orientation },
    /// `r = c exp(-a0 phi)`.
    Exponential { a0: f64 },
    /// `r = a +- c phi^(-1/(m-1))`.
    PowerLimitCycle { a: f64, m: u32, side: Side },
    /// `r = a +- c exp(-beta phi)`.
    ExponentialLimitCycle { a: f64, beta: f64, side: Side },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpiralSpec {
    #[serde(flatten)]
    pub kind: SpiralKind,
    #[serde(default = "default_phi_start")]
    pub phi_start: f64,
    /// Asymptotic constant `c` (called `m` in the content formula).
    #[serde(default = "default_coefficient")]
    pub coefficient: f64,
}

fn default_phi_start() -> f64 {
    1.0
}

fn default_coefficient() -> f64 {
    1.0
}

impl SpiralSpec {
    pub fn new(kind: SpiralKind) -> Self {
        SpiralSpec { kind, phi_start: 1.0, coefficient: 1.0 }
    }

    pub fn power_focus(alpha: f64) -> Self {
        Self::new(SpiralKind::PowerFocus { alpha, orientation: Orientation::In })
    }

    pub fn power_focus_out(alpha: f64) -> Self {
        Self::new(SpiralKind::PowerFocus { alpha, orientation: Orientation::Out })
    }

    pub fn exponential(a0: f64) -> Self {
        Self::new(SpiralKind::Exponential { a0 })
    }

    pub fn power_limit_cycle(a: f64, m: u32, side: Side) -> Self {
        Self::new(SpiralKind::PowerLimitCycle { a, m, side })
    }

    pub fn exponential_limit_cycle(a: f64, beta: f64, side: Side) -> Self {
        Self::new(SpiralKind::ExponentialLimitCycle { a, beta, side })
    }

    pub fn with_phi_start(mut self, phi_start: f64) -> Self {
        self.phi_start = phi_start;
        self
    }

    pub fn with_coefficient(mut self, c: f64) -> Self {
        self.coefficient = c;
        self
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        let c = self.coefficient;
        if !(c > 0.0 && c.is_finite()) {
            return Err(ModelError::OutOfRange("coefficient must be positive"));
        }
        if !self.phi_start.is_finite() {
            return Err(ModelError::OutOfRange("phi_start must be finite"));
        }
        match self.kind {
            SpiralKind::PowerFocus { alpha, .. } => {
                if !(alpha > 0.0) {
                    return Err(ModelError::OutOfRange("alpha must be positive"));
                }
                if !(self.phi_start > 0.0) {
                    return Err(ModelError::OutOfRange("phi_start must be positive for power spirals"));
                }
            }
            SpiralKind::Exponential { a0 } => {
                if a0 == 0.0 || !a0.is_finite() {
                    return Err(ModelError::OutOfRange("a0 must be nonzero"));
                }
            }
            SpiralKind::PowerLimitCycle { a, m, side } => {
                if !(a > 0.0) {
                    return Err(ModelError::OutOfRange("cycle radius must be positive"));
                }
                if m < 2 {
                    return Err(ModelError::OutOfRange("multiplicity must be at least 2"));
                }
                if !(self.phi_start > 0.0) {
                    return Err(ModelError::OutOfRange("phi_start must be positive for power spirals"));
                }
                if side == Side::Inside && c * self.phi_start.powf(-1.0 / f64::from(m - 1)) >= a {
                    return Err(ModelError::OutOfRange("inner spiral would cross the origin; raise phi_start"));
                }
            }
            SpiralKind::ExponentialLimitCycle { a, beta, side } => {
                if !(a > 0.0) {
                    return Err(ModelError::OutOfRange("cycle radius must be positive"));
                }
                if !(beta > 0.0) {
                    return Err(ModelError::OutOfRange("beta must be positive"));
                }
                if side == Side::Inside && c * (-beta * self.phi_start).exp() >= a {
                    return Err(ModelError::OutOfRange("inner spiral would cross the origin; raise phi_start"));
                }
            }
        }
        Ok(())
    }

    pub fn radius(&self, phi: f64) -> f64 {
        self.jet(phi).0
    }

    /// `(r, r', r'')` at `phi`.
    fn jet(&self, phi: f64) -> (f64, f64, f64) {
        let c = self.coefficient;
        match self.kind {
            SpiralKind::PowerFocus { alpha, orientation } => {
                let s = match orientation {
                    Orientation::In => -alpha,
                    Orientation::Out => alpha,
                };
                let r = c * phi.powf(s);
                (r, s * r / phi, s * (s - 1.0) * r / (phi * phi))
            }
            SpiralKind::Exponential { a0 } => {
                let r = c * (-a0 * phi).exp();
                (r, -a0 * r, a0 * a0 * r)
            }
            SpiralKind::PowerLimitCycle { a, m, side } => {
                let b = 1.0 / f64::from(m - 1);
                let f = side.sign() * c * phi.powf(-b);
                (a + f, -b * f / phi, b * (b + 1.0) * f / (phi * phi))
            }
            SpiralKind::ExponentialLimitCycle { a, beta, side } => {
                let f = side.sign() * c * (-beta * phi).exp();
                (a + f, -beta * f, beta * beta * f)
            }
        }
    }

    /// Where the spiral accumulates.
    pub fn limit(&self) -> Limit {
        match self.kind {
            SpiralKind::PowerFocus { orientation: Orientation::In, .. } => Limit::Origin,
            SpiralKind::PowerFocus { orientation: Orientation::Out, .. } => Limit::Infinity,
            SpiralKind::Exponential { a0 } if a0 > 0.0 => Limit::Origin,
            SpiralKind::Exponential { .. } => Limit::Infinity,
            SpiralKind::PowerLimitCycle { a, .. } | SpiralKind::ExponentialLimitCycle { a, .. } => {
                Limit::Circle { radius: a }
            }
        }
    }

    /// Jet of the curve the sampling bounds are applied to: the spiral
    /// itself, or its inversion when it tends to infinity.
    fn sampling_jet(&self, phi: f64) -> (f64, f64, f64) {
        let (r, r1, r2) = self.jet(phi);
        if self.limit() == Limit::Infinity {
            // w = 1/r: w' = -r'/r^2, w'' = (2 r'^2 - r r'')/r^3.
            (1.0 / r, -r1 / (r * r), (2.0 * r1 * r1 - r * r2) / (r * r * r))
        } else {
            (r, r1, r2)
        }
    }

    fn turn_spacing_at(&self, phi: f64) -> f64 {
        let w = |p: f64| {
            let r = self.radius(p);
            match self.limit() {
                Limit::Origin => r,
                Limit::Infinity => 1.0 / r,
                Limit::Circle { radius } => r - radius,
            }
        };
        (w(phi) - w(phi + 2.0 * PI)).abs()
    }
}

/// Sampling bounds for [`generate`]. Each step is the longer of the two
/// allowed by: chord at most `max_gap`, or (when set) estimated deviation
/// of the chord from the curve at most `max_deviation`. Steps never exceed
/// `max_dphi` radians.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sampling {
    pub max_gap: f64,
    pub max_deviation: Option<f64>,
    pub max_dphi: f64,
}

impl Sampling {
    pub fn chord(max_gap: f64) -> Self {
        Sampling { max_gap, max_deviation: None, max_dphi: 0.1 }
    }

    /// Matches the estimator's sampling check at scale `eps_min`.
    pub fn for_eps(eps_min: f64) -> Self {
        Sampling {
            max_gap: eps_min / 4.0,
            max_deviation: Some(eps_min / 32.0),
            max_dphi: 0.1,
        }
    }
}

/// Samples a spiral on `[phi_start, phi_end]` in polar form.
///
/// For spirals tending to infinity the bounds are applied to the inverted
/// curve, which is what every estimator works with.
pub fn generate(spec: &SpiralSpec, phi_end: f64, sampling: &Sampling) -> Result<SampledCurve, ModelError> {
    spec.validate()?;
    if !(phi_end > spec.phi_start) {
        return Err(ModelError::OutOfRange("phi_end must exceed phi_start"));
    }
    if !(sampling.max_gap > 0.0 && sampling.max_dphi > 0.0) {
        return Err(ModelError::OutOfRange("sampling bounds must be positive"));
    }
    let step = |phi: f64| {
        let (r, r1, r2) = spec.sampling_jet(phi);
        let speed = r.hypot(r1);
        let mut dphi = sampling.max_gap / speed;
        if let Some(dev) = sampling.max_deviation {
            let kappa = (r * r + 2.0 * r1 * r1 - r * r2).abs() / speed.powi(3);
            if kappa > 0.0 {
                dphi = dphi.max((8.0 * dev / kappa).sqrt() / speed);
            } else {
                dphi = sampling.max_dphi;
            }
        }
        dphi.min(sampling.max_dphi)
    };
    let mut pts = vec![Polar::new(spec.radius(spec.phi_start), spec.phi_start)];
    let mut phi = spec.phi_start;
    while phi < phi_end {
        let h0 = step(phi);
        let h = h0.min(step(phi + h0));
        phi = (phi + h).min(phi_end);
        pts.push(Polar::new(spec.radius(phi), phi));
    }
    Ok(SampledCurve::polar(pts, describe(spec))?)
}

/// First angle (searching by doubling) at which one turn of the spiral
/// spans at most `spacing` in the coordinate of its limit.
pub fn phi_for_turn_spacing(spec: &SpiralSpec, spacing: f64) -> Result<f64, ModelError> {
    spec.validate()?;
    const PHI_LIMIT: f64 = 1e9;
    let mut hi = spec.phi_start.abs().max(1.0) + 2.0 * PI;
    while spec.turn_spacing_at(hi) > spacing {
        hi *= 2.0;
        if hi > PHI_LIMIT {
            return Err(ModelError::TooLong(PHI_LIMIT));
        }
    }
    let mut lo = spec.phi_start;
    if spec.turn_spacing_at(lo) <= spacing {
        return Ok(lo);
    }
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if spec.turn_spacing_at(mid) > spacing {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(hi)
}

/// Generates the spiral far enough into its nucleus for the finest scale
/// `eps_min`, then cuts it there (see [`truncate_at_nucleus`]).
pub fn generate_to_nucleus(spec: &SpiralSpec, eps_min: f64, sampling: &Sampling) -> Result<SampledCurve, ModelError> {
    let phi_cut = phi_for_turn_spacing(spec, 0.25 * eps_min)?;
    let c = generate(spec, phi_cut + 4.0 * PI, sampling)?;
    Ok(truncate_at_nucleus(&c, spec.limit(), eps_min)?)
}

/// Length of the curve the estimator sees (the spiral, or its inversion
/// when it tends to infinity) between `phi_start` and `phi_end`.
pub fn estimator_length(spec: &SpiralSpec, phi_end: f64) -> f64 {
    let speed = |phi: f64| {
        let (r, r1, _) = spec.sampling_jet(phi);
        r.hypot(r1)
    };
    let a = spec.phi_start;
    let n = 4000;
    if a > 0.0 {
        // trapezoid in log(phi)
        let (la, lb) = (a.ln(), phi_end.ln());
        let h = (lb - la) / n as f64;
        (0..=n)
            .map(|i| {
                let phi = (la + h * i as f64).exp();
                let w = if i == 0 || i == n { 0.5 } else { 1.0 };
                w * speed(phi) * phi * h
            })
            .sum()
    } else {
        let h = (phi_end - a) / n as f64;
        (0..=n)
            .map(|i| {
                let w = if i == 0 || i == n { 0.5 } else { 1.0 };
                w * speed(a + h * i as f64) * h
            })
            .sum()
    }
}

/// Default grid work allowance for [`auto_eps_min`], in units of curve
/// length over `eps_min`; about 20 s of estimator time on one core.
pub const WORK_BUDGET: f64 = 1.2e7;

/// Smallest `eps_min` on the ladder `1e-4 * 10^(-j/2)`, `j = 0..=4`, whose
/// estimated grid work `L(eps)/eps` fits in `budget`. Slowly converging
/// spirals get finer scales; the coarsest rung is the fallback.
pub fn auto_eps_min(spec: &SpiralSpec, budget: f64) -> Result<f64, ModelError> {
    let mut best = 1e-4;
    for j in 0..=4 {
        let eps = 1e-4 * 10f64.powf(-(j as f64) / 2.0);
        let phi = phi_for_turn_spacing(spec, 0.25 * eps)?;
        if estimator_length(spec, phi) / eps <= budget {
            best = eps;
        } else {
            break;
        }
    }
    Ok(best)
}

fn describe(spec: &SpiralSpec) -> String {
    let c = spec.coefficient;
    match spec.kind {
        SpiralKind::PowerFocus { alpha, orientation: Orientation::In } => format!("r={c}*phi^(-{alpha})"),
        SpiralKind::PowerFocus { alpha, orientation: Orientation::Out } => format!("r={c}*phi^({alpha})"),
        SpiralKind::Exponential { a0 } => format!("r={c}*exp(-{a0}*phi)"),
        SpiralKind::PowerLimitCycle { a, m, side } => {
            format!("r={a}{}{c}*phi^(-1/{})", if side == Side::Outside { "+" } else { "-" }, m - 1)
        }
        SpiralKind::ExponentialLimitCycle { a, beta, side } => {
            format!("r={a}{}{c}*exp(-{beta}*phi)", if side == Side::Outside { "+" } else { "-" })
        }
    }
}

/// Exact box dimension of the comparison spiral.
pub fn model_dim(spec: &SpiralSpec) -> f64 {
    match spec.kind {
        SpiralKind::PowerFocus { alpha, .. } => spiral_dim(alpha),
        SpiralKind::Exponential { .. } | SpiralKind::ExponentialLimitCycle { .. } => 1.0,
        SpiralKind::PowerLimitCycle { m, .. } => limit_cycle_dim(m),
    }
}

/// `max{1, 2/(1+alpha)}`: power spirals `r = phi^(-alpha)`.
pub fn spiral_dim(alpha: f64) -> f64 {
    (2.0 / (1.0 + alpha)).max(1.0)
}

/// `1 + 1/(1+beta)`: spirals `r = a +- phi^(-beta)` around a circle.
pub fn power_limit_cycle_dim(beta: f64) -> f64 {
    1.0 + 1.0 / (1.0 + beta)
}

/// Minkowski content of a spiral with `f'(phi) ~ m (phi^(-alpha))'`,
/// `alpha in (0,1)`, at `d = 2/(1+alpha)`.
pub fn mink_content_formula(m: f64, alpha: f64) -> Result<f64, ModelError> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(ModelError::OutOfRange("alpha must lie in (0,1)"));
    }
    if !(m > 0.0) {
        return Err(ModelError::OutOfRange("m must be positive"));
    }
    let d = 2.0 / (1.0 + alpha);
    Ok(m.powf(d) * PI * (PI * alpha).powf(-2.0 * alpha / (1.0 + alpha)) * (1.0 + alpha) / (1.0 - alpha))
}

/// Content factor `(4R^2)^d` picked up by a spiral under the Riemann map of radius `R`.
pub fn riemann_content_factor(radius: f64, d: f64) -> f64 {
    (4.0 * radius * radius).powf(d)
}

/// `4k/(2k+1)`: weak focus with first nonzero Lyapunov coefficient `V_{2k+1}`.
pub fn focus_dim_at_infinity(k: u32) -> f64 {
    let k = f64::from(k);
    4.0 * k / (2.0 * k + 1.0)
}

/// `2 - 1/m`: spiral near a limit cycle of multiplicity `m`.
pub fn limit_cycle_dim(m: u32) -> f64 {
    2.0 - 1.0 / f64::from(m)
}

/// First `n` members of `{4k/(2k+1) : k >= 1}`.
pub fn d0(n: u32) -> Vec<f64> {
    (1..=n).map(focus_dim_at_infinity).collect()
}

/// First `n` members of `{2 - 1/m : m >= 1}`.
pub fn d1(n: u32) -> Vec<f64> {
    (1..=n).map(limit_cycle_dim).collect()
}

fn is_member(x: f64, values: impl Iterator<Item = f64>, tol: f64) -> bool {
    values.take_while(|v| *v <= 2.0).any(|v| (v - x).abs() <= tol)
}

pub fn in_d0(x: f64, tol: f64) -> bool {
    is_member(x, (1..10_000).map(focus_dim_at_infinity), tol)
}

pub fn in_d1(x: f64, tol: f64) -> bool {
    is_member(x, (1..10_000).map(limit_cycle_dim), tol)
}

/// `2(1 - 1/(alpha+beta))` for `y'' + C y^alpha (y')^beta + y = 0`,
/// `alpha` even, `beta` odd.
pub fn oscillator_dim(alpha: u32, beta: u32) -> Result<f64, ModelError> {
    if alpha == 0 || alpha % 2 != 0 {
        return Err(ModelError::OutOfRange("alpha must be a positive even integer"));
    }
    if beta % 2 != 1 {
        return Err(ModelError::OutOfRange("beta must be a positive odd integer"));
    }
    Ok(2.0 * (1.0 - 1.0 / f64::from(alpha + beta)))
}

/// `2(1 - 1/(2k+1))`: Lienard system whose first odd coefficient has index `2k+1`.
pub fn lienard_dim(k: u32) -> f64 {
    2.0 * (1.0 - 1.0 / f64::from(2 * k + 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SphereDims {
    /// Inverted and projected to the Poincare sphere.
    pub gamma2: f64,
    /// Then projected to the disc.
    pub gamma3: f64,
}

/// Dimensions of the Poincare-sphere image of `r = phi^(-alpha)` and of its disc projection.
pub fn sphere_dim_transforms(alpha: f64) -> Result<SphereDims, ModelError> {
    if !(alpha > 0.0) {
        return Err(ModelError::OutOfRange("alpha must be positive"));
    }
    Ok(SphereDims {
        gamma2: (2.0 + alpha) / (1.0 + alpha),
        gamma3: (2.0 + 2.0 * alpha) / (1.0 + 2.0 * alpha),
    })
}

/// The same values from the dimension `d1` of the original spiral, `d1 in (1,2)`.
pub fn sphere_dims_from_d1(d1: f64) -> Result<SphereDims, ModelError> {
    if !(d1 > 1.0 && d1 < 2.0) {
        return Err(ModelError::OutOfRange("d1 must lie in (1,2)"));
    }
    Ok(SphereDims { gamma2: 1.0 + 0.5 * d1, gamma3: 4.0 / (4.0 - d1) })
}

/// A named formula with its parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "formula", rename_all = "snake_case")]
pub enum OracleQuery {
    FocusDim { k: u32 },
    LimitCycleDim { m: u32 },
    SpiralDim { alpha: f64 },
    MinkContent { m: f64, alpha: f64 },
    SphereTransforms { alpha: f64 },
    SphereTransformsD1 { d1: f64 },
    OscillatorDim { alpha: u32, beta: u32 },
    LienardDim { k: u32 },
    StringDim { alpha: f64 },
}

impl OracleQuery {
    pub const NAMES: [&'static str; 9] = [
        "focus_dim",
        "limit_cycle_dim",
        "spiral_dim",
        "mink_content",
        "sphere_transforms",
        "sphere_transforms_d1",
        "oscillator_dim",
        "lienard_dim",
        "string_dim",
    ];

    pub fn evaluate(&self) -> Result<serde_json::Value, ModelError> {
        use serde_json::json;
        Ok(match *self {
            OracleQuery::FocusDim { k } => {
                if k == 0 {
                    return Err(ModelError::OutOfRange("k must be at least 1"));
                }
                json!(focus_dim_at_infinity(k))
            }
            OracleQuery::LimitCycleDim { m } => {
                if m == 0 {
                    return Err(ModelError::OutOfRange("m must be at least 1"));
                }
                json!(limit_cycle_dim(m))
            }
            OracleQuery::SpiralDim { alpha } => {
                if !(alpha > 0.0) {
                    return Err(ModelError::OutOfRange("alpha must be positive"));
                }
                json!(spiral_dim(alpha))
            }
            OracleQuery::MinkContent { m, alpha } => json!(mink_content_formula(m, alpha)?),
            OracleQuery::SphereTransforms { alpha } => serde_json::to_value(sphere_dim_transforms(alpha)?).unwrap(),
            OracleQuery::SphereTransformsD1 { d1 } => serde_json::to_value(sphere_dims_from_d1(d1)?).unwrap(),
            OracleQuery::OscillatorDim { alpha, beta } => json!(oscillator_dim(alpha, beta)?),
            OracleQuery::LienardDim { k } => {
                if k == 0 {
                    return Err(ModelError::OutOfRange("k must be at least 1"));
                }
                json!(lienard_dim(k))
            }
            OracleQuery::StringDim { alpha } => {
                if !(alpha > 0.0) {
                    return Err(ModelError::OutOfRange("alpha must be positive"));
                }
                json!(1.0 / (1.0 + alpha))
            }
        })
    }
}

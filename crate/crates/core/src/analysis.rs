//! End-to-end estimates: model spirals, orbit arcs of named systems, and
//! parameter sweeps.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::{
    extract_arc, integrate_cartesian, integrate_polar, CartesianOptions, DynamicsError, LimitCycle, PolarOptions,
    PolarSystem, SingularEnd, SystemSpec, Termination, TimeDirection, Trajectory, Window,
};
use crate::fractal::{check_sampling, dim_bounded_with, dim_unbounded, DimensionEstimate, EpsSchedule, FractalError, Method, PlanarSet, DEFAULT_SCALES};
use crate::geometry::{truncate_at_nucleus, GeometryError, Limit, Point2, Polar, SampledCurve};
use crate::models::{self, auto_eps_min, generate_to_nucleus, ModelError, Sampling, Side, SpiralSpec, WORK_BUDGET};
use crate::strings::StringError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
    #[error(transparent)]
    Fractal(#[from] FractalError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Strings(#[from] StringError),
    #[error("system has no focus to analyze (center or invalid parameters)")]
    NoFocus,
    #[error("cycle index {index} out of range; the system has {count} limit cycles")]
    NoSuchCycle { index: usize, count: usize },
    #[error("limit-cycle arcs need a polar normal form")]
    NotPolar,
    #[error("orbit did not reach the nucleus of scale eps_min within phi = {phi:.1}; raise eps_min or max_phi")]
    NucleusNotReached { phi: f64 },
    #[error("grid must be strictly monotone")]
    BadGrid,
}

impl AnalysisError {
    /// `true` for violated estimator or input preconditions, `false` for
    /// numerical failures.
    pub fn is_precondition(&self) -> bool {
        match self {
            AnalysisError::Fractal(e) => !matches!(
                e,
                FractalError::DegenerateProfile | FractalError::DimensionOutOfRange(_)
            ),
            AnalysisError::Dynamics(e) => matches!(
                e,
                DynamicsError::InvalidParameter(_) | DynamicsError::EmptyWindow | DynamicsError::NotMonotone
            ),
            AnalysisError::Geometry(_)
            | AnalysisError::Model(_)
            | AnalysisError::Strings(_)
            | AnalysisError::NoFocus
            | AnalysisError::NoSuchCycle { .. }
            | AnalysisError::NotPolar
            | AnalysisError::NucleusNotReached { .. }
            | AnalysisError::BadGrid => true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ArcTarget {
    /// Trajectory accumulating at the system's focus (origin, or infinity
    /// for inverted systems).
    Focus,
    /// Trajectory accumulating at limit cycle `index` (sorted by radius)
    /// from one side.
    Cycle { index: usize, side: Side },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArcOptions {
    /// Finest scale; `None` picks one per arc with [`resolve_arc_eps`].
    pub eps_min: Option<f64>,
    /// Coarsest scale; `None` spaces `num_scales` by `2^(-1/2)` from `eps_min`.
    #[serde(default)]
    pub eps_max: Option<f64>,
    pub num_scales: usize,
    /// Starting radius (focus) or offset from the cycle.
    pub start: Option<f64>,
    pub max_phi: f64,
    pub method: Method,
}

impl Default for ArcOptions {
    fn default() -> Self {
        ArcOptions { eps_min: None, eps_max: None, num_scales: DEFAULT_SCALES, start: None, max_phi: 2e5, method: Method::SausageGrid }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ArcEnd {
    Origin,
    /// Estimated on the inverted arc.
    Infinity,
    Cycle { radius: f64, multiplicity: u32 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArcReport {
    pub system: SystemSpec,
    pub target: ArcTarget,
    pub end: ArcEnd,
    pub direction: TimeDirection,
    pub start_radius: f64,
    pub phi_range: (f64, f64),
    pub points: usize,
    pub estimate: DimensionEstimate,
    pub oracle: Option<f64>,
    pub gap: Option<f64>,
    /// Fitted local exponent of the turn-to-turn decay: the weak focus
    /// order `k` at a focus, the multiplicity `m` at a cycle. Diagnostic
    /// only.
    pub order_fit: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ArcResult {
    pub report: ArcReport,
    /// The truncated arc in the coordinates it was estimated in.
    pub curve: SampledCurve,
}

fn step_for(eps_min: f64, rho_max: f64) -> f64 {
    (0.7 * (eps_min / (2.0 * rho_max)).sqrt()).min(0.05)
}

const CHUNK: f64 = 2.0 * PI * 50.0;

fn nucleus_or_continue(traj: &Trajectory, window: Window, limit: Limit, eps_min: f64) -> Result<Option<SampledCurve>, AnalysisError> {
    let arc = extract_arc(traj, window)?;
    match truncate_at_nucleus(&arc, limit, eps_min) {
        Ok(c) => Ok(Some(c)),
        Err(GeometryError::NucleusNotReached) => {
            if traj.termination == Termination::PhiBudget {
                Ok(None)
            } else {
                Err(AnalysisError::NucleusNotReached { phi: traj.last().map_or(0.0, |p| p.phi) })
            }
        }
        Err(e) => Err(e.into()),
    }
}

fn polar_arc(
    sys: &PolarSystem,
    rho0: f64,
    direction: TimeDirection,
    limit: Limit,
    window: Window,
    eps: f64,
    max_phi: f64,
    refine: u32,
) -> Result<(SampledCurve, Trajectory), AnalysisError> {
    let rho_max = match limit {
        Limit::Circle { radius } => rho0.max(radius),
        _ => rho0,
    };
    let mut popts = PolarOptions {
        step: step_for(eps, rho_max) / f64::from(1u32 << refine),
        direction,
        phi_budget: CHUNK,
        rho_floor: 1e-6 * eps,
        ..Default::default()
    };
    let mut traj = integrate_polar(sys, rho0, &popts)?;
    loop {
        if let Some(c) = nucleus_or_continue(&traj, window, limit, eps)? {
            return Ok((c, traj));
        }
        let last = traj.last().expect("nonempty");
        let swept = last.phi.abs();
        if swept >= max_phi {
            return Err(AnalysisError::NucleusNotReached { phi: swept });
        }
        popts.phi0 = last.phi;
        popts.phi_budget = swept.max(CHUNK).min(max_phi - swept);
        let more = integrate_polar(sys, last.r, &popts)?;
        traj.extend(more);
    }
}

fn cartesian_arc(
    spec: &SystemSpec,
    rho0: f64,
    eps: f64,
    max_phi: f64,
    refine: u32,
) -> Result<(SampledCurve, Trajectory, TimeDirection), AnalysisError> {
    let field = spec.field()?;
    let x0 = Point2::new(rho0, 0.0);
    let dphi = step_for(eps, rho0) / f64::from(1u32 << refine);
    let base = CartesianOptions { max_dphi: dphi, r_min: 1e-6 * eps, ..Default::default() };
    // pick the time direction that brings the orbit closer to the origin
    let probe = CartesianOptions { revolutions: 5.0, ..base.clone() };
    let fwd = integrate_cartesian(field.as_ref(), x0, &probe)?;
    let direction = if fwd.last().expect("nonempty").r < rho0 { TimeDirection::Forward } else { TimeDirection::Backward };
    let mut copts = CartesianOptions { direction, revolutions: CHUNK / (2.0 * PI), ..base };
    let mut traj = integrate_cartesian(field.as_ref(), x0, &copts)?;
    let window = Window::NearOrigin { c: rho0 * (1.0 + 1e-9) };
    loop {
        if let Some(c) = nucleus_or_continue(&traj, window, Limit::Origin, eps)? {
            return Ok((c, traj, direction));
        }
        let last = traj.last().expect("nonempty");
        let swept = (last.phi - traj.points[0].phi).abs();
        if swept >= max_phi {
            return Err(AnalysisError::NucleusNotReached { phi: swept });
        }
        copts.revolutions = swept.max(CHUNK).min(max_phi - swept) / (2.0 * PI);
        let mut more = integrate_cartesian(field.as_ref(), last.to_cartesian(), &copts)?;
        let shift = last.phi - more.points[0].phi;
        for p in &mut more.points {
            p.phi += shift;
        }
        traj.extend(more);
    }
}

/// Halvings of the output spacing tried before giving up on sampling.
const MAX_REFINE: u32 = 6;

/// Runs `arc` with successively finer output until the truncated curve
/// passes the sampling check at `eps_min`.
fn refined<T>(
    eps_min: f64,
    mut arc: impl FnMut(u32) -> Result<(SampledCurve, T), AnalysisError>,
) -> Result<(SampledCurve, T), AnalysisError> {
    let mut refine = 0;
    loop {
        let (curve, extra) = arc(refine)?;
        match check_sampling(&PlanarSet::from_curve(&curve)?, eps_min) {
            Ok(()) => return Ok((curve, extra)),
            Err(FractalError::UnderSampled { .. }) if refine < MAX_REFINE => refine += 1,
            Err(e) => return Err(e.into()),
        }
    }
}

/// Local exponent of `dw ~ w^s` between successive turns, where `w` is the
/// distance to the limit; fitted over the last half of the turns.
pub fn fit_turn_exponent(points: &[Polar], limit: Limit) -> Option<f64> {
    if points.len() < 4 {
        return None;
    }
    let w = |r: f64| match limit {
        Limit::Origin => r,
        Limit::Infinity => 1.0 / r,
        Limit::Circle { radius } => (r - radius).abs(),
    };
    let sgn = if points[1].phi > points[0].phi { 1.0 } else { -1.0 };
    let phi0 = points[0].phi;
    let turns = ((points.last()?.phi - phi0) * sgn / (2.0 * PI)).floor() as usize;
    if turns < 8 {
        return None;
    }
    let mut j = 0;
    let mut ws = Vec::with_capacity(turns + 1);
    for n in 0..=turns {
        let target = phi0 + sgn * 2.0 * PI * n as f64;
        while j + 1 < points.len() && (points[j + 1].phi - target) * sgn < 0.0 {
            j += 1;
        }
        let (a, b) = (points[j], points[(j + 1).min(points.len() - 1)]);
        let t = if b.phi != a.phi { (target - a.phi) / (b.phi - a.phi) } else { 0.0 };
        ws.push(w(a.r + t * (b.r - a.r)));
    }
    let (xs, ys): (Vec<f64>, Vec<f64>) = ws[turns / 2..]
        .windows(2)
        .filter_map(|p| {
            let d = (p[0] - p[1]).abs();
            (d > 0.0 && p[0] > 0.0).then(|| (p[0].ln(), d.ln()))
        })
        .unzip();
    crate::fractal::linear_fit(&xs, &ys).map(|f| f.slope)
}

/// The scale list for `eps_min` with an optional upper end.
pub fn schedule(eps_min: f64, eps_max: Option<f64>, num_scales: usize) -> Result<Vec<f64>, AnalysisError> {
    Ok(match eps_max {
        Some(hi) => EpsSchedule::between(eps_min, hi, num_scales)?.values(),
        None => EpsSchedule::from_min(eps_min, num_scales).values(),
    })
}

fn estimate_curve(curve: &SampledCurve, eps_min: f64, opts: &ArcOptions) -> Result<DimensionEstimate, AnalysisError> {
    let set = PlanarSet::from_curve(curve)?;
    let eps = schedule(eps_min, opts.eps_max, opts.num_scales)?;
    Ok(dim_bounded_with(&set, &eps, opts.method)?)
}

fn default_focus_start(work: &SystemSpec) -> f64 {
    match work.polar() {
        Some(p) => {
            let rmin = p.limit_cycles().first().map_or(f64::INFINITY, |c| c.radius);
            0.5f64.min(0.5 * rmin)
        }
        None => 1.0,
    }
}

/// An arc integrated and truncated at one scale, not yet estimated.
struct Traced {
    curve: SampledCurve,
    end: ArcEnd,
    direction: TimeDirection,
    start_radius: f64,
    oracle: f64,
    order_fit: Option<f64>,
}

fn trace_arc(sys: &SystemSpec, target: ArcTarget, opts: &ArcOptions, eps: f64) -> Result<Traced, AnalysisError> {
    sys.validate()?;
    match target {
        ArcTarget::Focus => {
            let oracle = sys.focus_dim().ok_or(AnalysisError::NoFocus)?;
            let end = sys.focus_end();
            // the neighbourhood of infinity is studied through inversion
            let work = match end {
                SingularEnd::Infinity => sys.inverted(),
                SingularEnd::Origin => sys.clone(),
            };
            let rho0 = opts.start.unwrap_or_else(|| default_focus_start(&work));
            let (curve, traj, direction) = match work.polar() {
                Some(p) => {
                    let dir = p.focus_approach();
                    let window = Window::NearOrigin { c: rho0 * (1.0 + 1e-9) };
                    let (c, t) = refined(eps, |r| polar_arc(&p, rho0, dir, Limit::Origin, window, eps, opts.max_phi, r))?;
                    (c, t, dir)
                }
                None => {
                    let (c, (t, dir)) = refined(eps, |r| {
                        cartesian_arc(&work, rho0, eps, opts.max_phi, r).map(|(c, t, d)| (c, (t, d)))
                    })?;
                    (c, t, dir)
                }
            };
            let order_fit = fit_turn_exponent(&traj.points, Limit::Origin).map(|s| (s - 1.0) / 2.0);
            let end = match end {
                SingularEnd::Infinity => ArcEnd::Infinity,
                SingularEnd::Origin => ArcEnd::Origin,
            };
            Ok(Traced { curve, end, direction, start_radius: rho0, oracle, order_fit })
        }
        ArcTarget::Cycle { index, side } => {
            let p = sys.polar().ok_or(AnalysisError::NotPolar)?;
            let cycles = p.limit_cycles();
            let c: &LimitCycle = cycles.get(index).ok_or(AnalysisError::NoSuchCycle { index, count: cycles.len() })?;
            let a = c.radius;
            let neighbour = cycles
                .iter()
                .filter(|o| o.radius != a)
                .map(|o| (o.radius - a).abs())
                .fold(f64::INFINITY, f64::min);
            let delta = opts.start.unwrap_or_else(|| (0.2 * a).min(0.4 * neighbour));
            let (rho0, dir) = match side {
                Side::Outside => (a + delta, c.approach_outside),
                Side::Inside => (a - delta, c.approach_inside),
            };
            let limit = Limit::Circle { radius: a };
            let window = Window::around(a, delta * (1.0 + 1e-9));
            let (curve, traj) = refined(eps, |r| polar_arc(&p, rho0, dir, limit, window, eps, opts.max_phi, r))?;
            Ok(Traced {
                curve,
                end: ArcEnd::Cycle { radius: a, multiplicity: c.multiplicity },
                direction: dir,
                start_radius: rho0,
                oracle: c.dimension(),
                order_fit: fit_turn_exponent(&traj.points, limit),
            })
        }
    }
}

/// Coarsest rung of the automatic scale ladder.
pub const ARC_EPS_COARSE: f64 = 1e-4;
/// Finest rung of the automatic scale ladder.
pub const ARC_EPS_FINE: f64 = 1e-6;
/// Cap on `length / eps_min` for automatically resolved arcs.
pub const ARC_WORK_BUDGET: f64 = 3e7;

fn ladder() -> Vec<f64> {
    (0..=4).map(|j| ARC_EPS_COARSE * 10f64.powf(-0.5 * j as f64)).collect()
}

/// Picks the finest `eps_min` on the ladder `1e-4 * 10^(-j/2)` whose
/// predicted `length / eps_min` stays within [`ARC_WORK_BUDGET`]. The arc
/// length is measured at the two coarsest rungs and extrapolated as a power
/// of `eps`. Returns the chosen scale and, when it is one of the measured
/// rungs, the traced arc.
fn resolve(sys: &SystemSpec, target: ArcTarget, opts: &ArcOptions) -> Result<(f64, Option<Traced>), AnalysisError> {
    let rungs = ladder();
    let t0 = trace_arc(sys, target, opts, rungs[0])?;
    let l0 = t0.curve.length();
    if l0 / rungs[1] > ARC_WORK_BUDGET {
        return Ok((rungs[0], Some(t0)));
    }
    let t1 = trace_arc(sys, target, opts, rungs[1])?;
    let l1 = t1.curve.length();
    let g = ((l1 / l0).ln() / (rungs[0] / rungs[1]).ln()).max(0.0);
    let predicted = |e: f64| l1 * (rungs[1] / e).powf(g) / e;
    let pick = rungs[1..].iter().copied().take_while(|&e| predicted(e) <= ARC_WORK_BUDGET).last().unwrap_or(rungs[1]);
    Ok((pick, (pick == rungs[1]).then_some(t1)))
}

/// The automatically chosen `eps_min` for one arc.
pub fn resolve_arc_eps(sys: &SystemSpec, target: ArcTarget, opts: &ArcOptions) -> Result<f64, AnalysisError> {
    Ok(resolve(sys, target, opts)?.0)
}

/// Integrates, windows, truncates and estimates one spiral arc of `sys`.
pub fn analyze_arc(sys: &SystemSpec, target: ArcTarget, opts: &ArcOptions) -> Result<ArcResult, AnalysisError> {
    let (eps, traced) = match opts.eps_min {
        Some(e) => (e, None),
        None => resolve(sys, target, opts)?,
    };
    let t = match traced {
        Some(t) => t,
        None => trace_arc(sys, target, opts, eps)?,
    };
    let estimate = estimate_curve(&t.curve, eps, opts)?;
    let pts = t.curve.polar_points().unwrap_or(&[]);
    let phi_range = (pts.first().map_or(0.0, |p| p.phi), pts.last().map_or(0.0, |p| p.phi));
    let report = ArcReport {
        system: sys.clone(),
        target,
        end: t.end,
        direction: t.direction,
        start_radius: t.start_radius,
        phi_range,
        points: t.curve.len(),
        gap: Some((estimate.dimension - t.oracle).abs()),
        estimate,
        oracle: Some(t.oracle),
        order_fit: t.order_fit,
    };
    Ok(ArcResult { report, curve: t.curve })
}

/// Every arc of a polar system: the focus, then both sides of each cycle.
pub fn analyze_all_arcs(sys: &SystemSpec, opts: &ArcOptions) -> Result<Vec<ArcResult>, AnalysisError> {
    let mut targets = vec![ArcTarget::Focus];
    if let Some(p) = sys.polar() {
        for i in 0..p.limit_cycles().len() {
            targets.push(ArcTarget::Cycle { index: i, side: Side::Inside });
            targets.push(ArcTarget::Cycle { index: i, side: Side::Outside });
        }
    }
    targets.into_iter().map(|t| analyze_arc(sys, t, opts)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Exponential,
    PowerFocus,
    LimitCycle,
}

/// Below this an estimate counts as the trivial dimension 1.
pub const EXPONENTIAL_THRESHOLD: f64 = 1.12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub regime: Regime,
    pub nearest: f64,
    pub residual: f64,
}

/// Exponential below [`EXPONENTIAL_THRESHOLD`], otherwise the nearest
/// admissible value `4k/(2k+1)` (focus) or `2 - 1/m` (cycle).
pub fn classify(dim: f64) -> Classification {
    if dim < EXPONENTIAL_THRESHOLD {
        return Classification { regime: Regime::Exponential, nearest: 1.0, residual: (dim - 1.0).abs() };
    }
    let mut best = Classification { regime: Regime::Exponential, nearest: 1.0, residual: f64::INFINITY };
    for x in models::d0(50) {
        if (dim - x).abs() < best.residual {
            best = Classification { regime: Regime::PowerFocus, nearest: x, residual: (dim - x).abs() };
        }
    }
    for x in models::d1(50) {
        if (dim - x).abs() < best.residual {
            best = Classification { regime: Regime::LimitCycle, nearest: x, residual: (dim - x).abs() };
        }
    }
    best
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum SweepFamily {
    /// Sweeps `a`.
    HopfInverted { k: u32 },
    /// Sweeps `a[index]`, the other coefficients fixed.
    TakensInverted { l: u32, a: Vec<f64>, index: usize },
}

impl SweepFamily {
    pub fn parameter(&self) -> String {
        match self {
            SweepFamily::HopfInverted { .. } => "a".into(),
            SweepFamily::TakensInverted { index, .. } => format!("a{index}"),
        }
    }

    pub fn system(&self, value: f64) -> SystemSpec {
        match self {
            SweepFamily::HopfInverted { k } => SystemSpec::HopfInverted { k: *k, a: value },
            SweepFamily::TakensInverted { l, a, index } => {
                let mut a = a.clone();
                if let Some(x) = a.get_mut(*index) {
                    *x = value;
                }
                SystemSpec::TakensInverted { l: *l, a }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArcSummary {
    pub target: ArcTarget,
    pub end: ArcEnd,
    pub dimension: f64,
    pub oracle: Option<f64>,
    pub classification: Classification,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub value: f64,
    /// Classification of the largest arc dimension at this value.
    pub regime: Regime,
    pub dimension: f64,
    pub nearest: f64,
    pub residual: f64,
    pub arcs: Vec<ArcSummary>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub family: SweepFamily,
    pub parameter: String,
    pub grid: Vec<f64>,
    pub points: Vec<SweepPoint>,
}

fn summarize(value: f64, arcs: &[ArcResult]) -> SweepPoint {
    let arcs: Vec<ArcSummary> = arcs
        .iter()
        .map(|r| ArcSummary {
            target: r.report.target,
            end: r.report.end.clone(),
            dimension: r.report.estimate.dimension,
            oracle: r.report.oracle,
            classification: classify(r.report.estimate.dimension),
        })
        .collect();
    let top = arcs
        .iter()
        .max_by(|a, b| a.dimension.total_cmp(&b.dimension))
        .expect("focus arc is always present");
    SweepPoint {
        value,
        regime: top.classification.regime,
        dimension: top.dimension,
        nearest: top.classification.nearest,
        residual: top.classification.residual,
        arcs: arcs.clone(),
    }
}

/// Analyzes every arc at each grid value; values run concurrently and the
/// report keeps grid order.
pub fn run_sweep(family: &SweepFamily, grid: &[f64], opts: &ArcOptions) -> Result<SweepReport, AnalysisError> {
    if grid.len() > 1 {
        let up = grid[1] > grid[0];
        if !grid.windows(2).all(|w| if up { w[1] > w[0] } else { w[1] < w[0] }) {
            return Err(AnalysisError::BadGrid);
        }
    }
    let points = grid
        .par_iter()
        .map(|&v| analyze_all_arcs(&family.system(v), opts).map(|arcs| summarize(v, &arcs)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SweepReport { family: family.clone(), parameter: family.parameter(), grid: grid.to_vec(), points })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelReport {
    pub spec: SpiralSpec,
    pub eps_min: f64,
    pub estimate: DimensionEstimate,
    pub oracle: f64,
    pub gap: f64,
}

/// Generates a comparison spiral to its nucleus and estimates it
/// (through inversion when it tends to infinity). Without `eps_min` the
/// scale is chosen by [`auto_eps_min`].
pub fn estimate_model(
    spec: &SpiralSpec,
    eps_min: Option<f64>,
    eps_max: Option<f64>,
    num_scales: usize,
) -> Result<ModelReport, AnalysisError> {
    let eps_min = match eps_min {
        Some(e) => e,
        None => auto_eps_min(spec, WORK_BUDGET)?,
    };
    let curve = generate_to_nucleus(spec, eps_min, &Sampling::for_eps(eps_min))?;
    let set = PlanarSet::from_curve(&curve)?;
    let eps = schedule(eps_min, eps_max, num_scales)?;
    let estimate = if spec.limit() == Limit::Infinity {
        dim_unbounded(&set, &eps)?
    } else {
        dim_bounded_with(&set, &eps, Method::SausageGrid)?
    };
    let oracle = models::model_dim(spec);
    Ok(ModelReport { spec: *spec, eps_min, gap: (estimate.dimension - oracle).abs(), estimate, oracle })
}

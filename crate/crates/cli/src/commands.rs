use std::f64::consts::PI;
use std::path::Path;

use anyhow::Context;
use boxdim_core::analysis::{
    analyze_arc, estimate_model, run_sweep, schedule, ArcOptions, ArcTarget, SweepFamily, SweepReport,
};
use boxdim_core::dynamics::{
    integrate_cartesian, integrate_polar, CartesianOptions, PolarOptions, SystemSpec, TimeDirection,
};
use boxdim_core::fractal::{
    dim_bounded_with, dim_unbounded_about, fit_dimension, min_sampling_eps, profile, Method, PlanarSet, DimensionEstimate,
};
use boxdim_core::geometry::{disc_project_curve, project_curve, CurveProjection};
use boxdim_core::io::{load_curve, load_sequence, save_curve, save_profile, SCHEMA_VERSION};
use boxdim_core::models::{self, generate, generate_to_nucleus, OracleQuery, Sampling, Side, SpiralSpec};
use boxdim_core::strings::{
    gaps, is_monotone_string, string_dimension, string_eps_min, string_point_set, SequenceGenerator,
};
use boxdim_core::{FractalError, Point2, SausageProfile};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::args::*;
use crate::failure::usage;
use crate::settings::Settings;

/// Scale used to sample curves when `--eps-min` is not given.
pub const DEFAULT_SAMPLE_EPS: f64 = 1e-4;

fn ensure_out(s: &Settings) -> anyhow::Result<()> {
    std::fs::create_dir_all(&s.out).with_context(|| format!("cannot create {}", s.out.display()))
}

fn file_name(p: &Path) -> String {
    p.file_name().map_or_else(String::new, |n| n.to_string_lossy().into_owned())
}

pub fn parse_system(text: &str) -> anyhow::Result<SystemSpec> {
    let body = match text.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {path}: {e}")))?,
        None => text.to_string(),
    };
    let sys: SystemSpec = serde_json::from_str(&body).map_err(|e| usage(format!("bad system spec: {e}")))?;
    sys.validate().map_err(|e| usage(format!("bad system spec: {e}")))?;
    Ok(sys)
}

fn side(s: SideArg) -> Side {
    match s {
        SideArg::Inside => Side::Inside,
        SideArg::Outside => Side::Outside,
    }
}

fn method(m: MethodArg) -> Method {
    match m {
        MethodArg::Sausage => Method::SausageGrid,
        MethodArg::Box => Method::BoxCount,
    }
}

pub fn model_spec(m: &ModelArgs) -> anyhow::Result<SpiralSpec> {
    let need = |v: Option<f64>, flag: &str| v.ok_or_else(|| usage(format!("--kind {:?} needs --{flag}", m.kind)));
    let spec = match m.kind {
        ModelKind::Focus => SpiralSpec::power_focus(need(m.alpha, "alpha")?),
        ModelKind::FocusOut => SpiralSpec::power_focus_out(need(m.alpha, "alpha")?),
        ModelKind::Exponential => SpiralSpec::exponential(need(m.a0, "a0")?),
        ModelKind::Cycle => SpiralSpec::power_limit_cycle(
            need(m.radius, "radius")?,
            m.multiplicity.ok_or_else(|| usage("--kind cycle needs --multiplicity"))?,
            side(m.side),
        ),
        ModelKind::ExpCycle => {
            SpiralSpec::exponential_limit_cycle(need(m.radius, "radius")?, need(m.beta, "beta")?, side(m.side))
        }
    }
    .with_phi_start(m.phi_start)
    .with_coefficient(m.coefficient);
    spec.validate().map_err(|e| usage(format!("bad spiral: {e}")))?;
    Ok(spec)
}

pub struct SpiralRequest {
    pub spec: SpiralSpec,
    pub phi_max: Option<f64>,
    pub invert: bool,
    pub riemann: Option<f64>,
    pub poincare: Option<f64>,
    pub disc: bool,
    pub name: String,
}

pub fn spiral(s: &Settings, a: &SpiralArgs) -> anyhow::Result<Value> {
    let req = SpiralRequest {
        spec: model_spec(&a.model)?,
        phi_max: a.phi_max,
        invert: a.invert,
        riemann: a.riemann,
        poincare: a.poincare,
        disc: a.disc,
        name: a.name.clone(),
    };
    spiral_files(s, &req)
}

pub fn spiral_files(s: &Settings, r: &SpiralRequest) -> anyhow::Result<Value> {
    if r.disc && r.riemann.is_none() && r.poincare.is_none() {
        return Err(usage("--disc needs --riemann or --poincare"));
    }
    for (flag, v) in [("riemann", r.riemann), ("poincare", r.poincare)] {
        if v.is_some_and(|x| !(x > 0.0 && x.is_finite())) {
            return Err(usage(format!("--{flag} needs a positive radius")));
        }
    }
    let eps = s.eps_min.unwrap_or(DEFAULT_SAMPLE_EPS);
    let sampling = Sampling::for_eps(eps);
    let curve = match r.phi_max {
        Some(p) if !(p > r.spec.phi_start) => return Err(usage("--phi-max must exceed the start angle")),
        Some(p) => generate(&r.spec, p, &sampling)?,
        None => generate_to_nucleus(&r.spec, eps, &sampling)?,
    };
    ensure_out(s)?;
    let mut files = Vec::new();
    let mut save = |c: &boxdim_core::SampledCurve, suffix: &str| -> anyhow::Result<()> {
        let p = s.out.join(format!("{}{suffix}.csv", r.name));
        save_curve(c, &p)?;
        files.push(file_name(&p));
        Ok(())
    };
    save(&curve, "")?;
    if r.invert {
        save(&curve.inverted()?, "_inverted")?;
    }
    for (tag, radius, proj) in [
        ("_riemann", r.riemann, r.riemann.map(CurveProjection::Riemann)),
        ("_poincare", r.poincare, r.poincare.map(CurveProjection::Poincare)),
    ] {
        if let (Some(_), Some(proj)) = (radius, proj) {
            let sphere = project_curve(&curve, proj)?;
            save(&sphere, tag)?;
            if r.disc {
                save(&disc_project_curve(&sphere)?, &format!("{tag}_disc"))?;
            }
        }
    }
    let pts = curve.polar_points().unwrap_or(&[]);
    Ok(json!({
        "schema_version": SCHEMA_VERSION,
        "command": "spiral",
        "spec": r.spec,
        "eps_min": eps,
        "phi_range": [pts.first().map(|p| p.phi), pts.last().map(|p| p.phi)],
        "points": curve.len(),
        "files": files,
        "oracle": models::model_dim(&r.spec),
    }))
}

fn parse_point(text: &str) -> anyhow::Result<Point2> {
    let v: Vec<f64> = text
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| usage(format!("--x0 expects x,y: {e}")))?;
    match v[..] {
        [x, y] => Ok(Point2::new(x, y)),
        _ => Err(usage("--x0 expects x,y")),
    }
}

pub fn integrate(s: &Settings, a: &IntegrateArgs) -> anyhow::Result<Value> {
    let sys = parse_system(&a.system)?;
    if !(a.revolutions > 0.0 && a.revolutions.is_finite()) || !(a.step > 0.0) {
        return Err(usage("--revolutions and --step must be positive"));
    }
    let direction = if a.backward { TimeDirection::Backward } else { TimeDirection::Forward };
    let traj = match (sys.polar(), &a.x0) {
        (Some(p), None) => {
            let opts = PolarOptions { step: a.step, direction, phi_budget: 2.0 * PI * a.revolutions, ..Default::default() };
            integrate_polar(&p, a.rho0.unwrap_or(0.5), &opts)?
        }
        _ => {
            let x0 = match &a.x0 {
                Some(t) => parse_point(t)?,
                None => Point2::new(a.rho0.unwrap_or(0.5), 0.0),
            };
            let opts = CartesianOptions { direction, revolutions: a.revolutions, ..Default::default() };
            integrate_cartesian(sys.field()?.as_ref(), x0, &opts)?
        }
    };
    ensure_out(s)?;
    let path = s.out.join(format!("{}.csv", a.name));
    save_curve(&traj.curve()?, &path)?;
    Ok(json!({
        "schema_version": SCHEMA_VERSION,
        "command": "integrate",
        "system": sys,
        "solver": traj.solver,
        "direction": traj.direction,
        "termination": traj.termination,
        "points": traj.len(),
        "start": traj.points.first(),
        "end": traj.last(),
        "angle_monotone": traj.angle_monotone(),
        "files": [file_name(&path)],
    }))
}

/// Profile and fit; unbounded sets go through inversion about the origin.
fn estimate_set(
    set: &PlanarSet,
    unbounded: bool,
    eps: &[f64],
    m: Method,
) -> anyhow::Result<(SausageProfile, DimensionEstimate)> {
    let work = if unbounded {
        if !(set.distance_from(Point2::ORIGIN) > 0.0) {
            return Err(FractalError::TouchesCenter.into());
        }
        set.inverted()?
    } else {
        set.clone()
    };
    let p = profile(&work, eps, m)?;
    let est = fit_dimension(&p, 2)?;
    Ok((p, est))
}

/// Random vector of length `r` drawn from the seed.
pub fn shift_vector(seed: u64, r: f64) -> Point2 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t: f64 = rng.gen_range(0.0..2.0 * PI);
    Point2::new(r * t.cos(), r * t.sin())
}

fn shift_check(
    s: &Settings,
    set: &PlanarSet,
    unbounded: bool,
    eps: &[f64],
    m: Method,
    r: f64,
    base: f64,
) -> anyhow::Result<Value> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(usage("--shift must be positive"));
    }
    let w = shift_vector(s.seed, r);
    let est = if unbounded {
        dim_unbounded_about(set, w, eps)?
    } else {
        dim_bounded_with(&set.similarity(1.0, 0.0, Point2::ORIGIN - w), eps, m)?
    };
    Ok(json!({ "vector": [w.x, w.y], "dimension": est.dimension, "difference": (est.dimension - base).abs() }))
}

/// Finest scale the sampling supports, but no finer than `1e-4` of the diameter.
fn default_curve_eps(set: &PlanarSet) -> anyhow::Result<f64> {
    let diam = set.bounding_box()?.diameter();
    Ok((min_sampling_eps(set) * (1.0 + 1e-9)).max(1e-4 * diam))
}

fn with_oracle(mut v: Value, dimension: f64, oracle: Option<f64>) -> Value {
    let m = v.as_object_mut().expect("object");
    m.insert("dimension".into(), json!(dimension));
    m.insert("oracle".into(), json!(oracle));
    m.insert("gap".into(), json!(oracle.map(|o| (dimension - o).abs())));
    v
}

pub fn dim(s: &Settings, a: &DimArgs) -> anyhow::Result<Value> {
    let m = method(a.method);
    if let Some(path) = &a.curve {
        let curve = load_curve(path)?;
        let set = PlanarSet::from_curve(&curve)?;
        let unbounded = a.unbounded || !set.is_bounded();
        let eps_min = match s.eps_min {
            Some(e) => e,
            None => default_curve_eps(&if unbounded { set.inverted()? } else { set.clone() })?,
        };
        let eps = schedule(eps_min, s.eps_max, s.scales)?;
        let (p, est) = estimate_set(&set, unbounded, &eps, m)?;
        let mut files = Vec::new();
        if a.save_profile {
            ensure_out(s)?;
            let pp = s.out.join("dim_profile.csv");
            save_profile(&p, &pp)?;
            files.push(file_name(&pp));
        }
        let shift = match a.shift {
            Some(r) => Some(shift_check(s, &set, unbounded, &eps, m, r, est.dimension)?),
            None => None,
        };
        let d = est.dimension;
        let v = json!({
            "schema_version": SCHEMA_VERSION,
            "command": "dim",
            "input": { "kind": "curve", "file": file_name(path), "points": curve.len(), "unbounded": unbounded },
            "estimate": est,
            "shift": shift,
            "files": files,
        });
        return Ok(with_oracle(v, d, a.oracle));
    }
    if let Some(text) = &a.system {
        let sys = parse_system(text)?;
        let target = match a.target {
            TargetArg::Focus => ArcTarget::Focus,
            TargetArg::Cycle => ArcTarget::Cycle { index: a.index, side: side(a.model_args.side) },
        };
        return dim_system(s, &sys, target, a.start, a.max_phi, m, a.save_curve);
    }
    if a.model {
        let spec = model_spec(&a.model_args)?;
        let r = estimate_model(&spec, s.eps_min, s.eps_max, s.scales)?;
        let d = r.estimate.dimension;
        let v = json!({
            "schema_version": SCHEMA_VERSION,
            "command": "dim",
            "input": { "kind": "model", "spec": spec },
            "eps_min": r.eps_min,
            "estimate": r.estimate,
        });
        return Ok(with_oracle(v, d, Some(r.oracle)));
    }
    let (seq, input, oracle) = match (&a.sequence, a.string_alpha) {
        (Some(path), _) => (load_sequence(path)?, json!({ "kind": "sequence", "file": file_name(path) }), a.oracle),
        (None, Some(alpha)) => {
            let g = SequenceGenerator::Power { alpha };
            g.validate()?;
            if a.n < 3 {
                return Err(usage("--n must be at least 3"));
            }
            (g.prefix(a.n), json!({ "kind": "string", "generator": g, "n": a.n }), Some(g.exact_dimension()))
        }
        (None, None) => return Err(usage("no input given")),
    };
    let set = string_point_set(&seq)?;
    let eps_min = match s.eps_min {
        Some(e) => e,
        None => string_eps_min(&seq)?,
    };
    let eps = schedule(eps_min, s.eps_max, s.scales)?;
    let (p, est) = estimate_set(&set, true, &eps, m)?;
    let mut files = Vec::new();
    if a.save_profile {
        ensure_out(s)?;
        let pp = s.out.join("dim_profile.csv");
        save_profile(&p, &pp)?;
        files.push(file_name(&pp));
    }
    let shift = match a.shift {
        Some(r) => Some(shift_check(s, &set, true, &eps, m, r, est.dimension)?),
        None => None,
    };
    let d = est.dimension;
    let v = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "dim",
        "input": input,
        "estimate": est,
        "string_fit": string_dimension(&seq)?,
        "shift": shift,
        "files": files,
    });
    Ok(with_oracle(v, d, oracle))
}

pub fn dim_system(
    s: &Settings,
    sys: &SystemSpec,
    target: ArcTarget,
    start: Option<f64>,
    max_phi: f64,
    m: Method,
    save: bool,
) -> anyhow::Result<Value> {
    let opts = ArcOptions { eps_min: s.eps_min, eps_max: s.eps_max, num_scales: s.scales, start, max_phi, method: m };
    let r = analyze_arc(sys, target, &opts)?;
    let mut files = Vec::new();
    if save {
        ensure_out(s)?;
        let p = s.out.join("dim_arc.csv");
        save_curve(&r.curve, &p)?;
        files.push(file_name(&p));
    }
    let d = r.report.estimate.dimension;
    let oracle = r.report.oracle;
    let v = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "dim",
        "input": { "kind": "system", "system": sys, "target": target },
        "report": r.report,
        "files": files,
    });
    Ok(with_oracle(v, d, oracle))
}

fn grid_of(a: &SweepArgs) -> anyhow::Result<Vec<f64>> {
    let grid = match (&a.grid, a.from, a.to, a.steps) {
        (Some(g), ..) => g
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<f64>().map_err(|e| usage(format!("bad grid value {t:?}: {e}"))))
            .collect::<anyhow::Result<_>>()?,
        (None, Some(lo), Some(hi), Some(n)) => match n {
            0 => Vec::new(),
            1 => vec![lo],
            _ => (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect(),
        },
        _ => return Err(usage("give --grid or --from/--to/--steps")),
    };
    if grid.iter().any(|v| !v.is_finite()) {
        return Err(usage("grid values must be finite"));
    }
    if grid.len() > 1 {
        let up = grid[1] > grid[0];
        if !grid.windows(2).all(|w| if up { w[1] > w[0] } else { w[1] < w[0] }) {
            return Err(usage("grid must be strictly monotone"));
        }
    }
    Ok(grid)
}

pub fn sweep(s: &Settings, a: &SweepArgs) -> anyhow::Result<Value> {
    let family = match a.family {
        FamilyArg::HopfInverted => SweepFamily::HopfInverted { k: a.k },
        FamilyArg::TakensInverted => {
            if a.a.len() != a.l as usize {
                return Err(usage(format!("--a needs {} coefficients", a.l)));
            }
            if a.index >= a.a.len() {
                return Err(usage("--index out of range"));
            }
            SweepFamily::TakensInverted { l: a.l, a: a.a.clone(), index: a.index }
        }
    };
    let grid = grid_of(a)?;
    if let Some(&v) = grid.first() {
        family.system(v).validate().map_err(|e| usage(format!("bad family: {e}")))?;
    }
    sweep_family(s, &family, &grid, a.start, a.max_phi)
}

pub fn sweep_family(
    s: &Settings,
    family: &SweepFamily,
    grid: &[f64],
    start: Option<f64>,
    max_phi: f64,
) -> anyhow::Result<Value> {
    let opts = ArcOptions {
        eps_min: s.eps_min,
        eps_max: s.eps_max,
        num_scales: s.scales,
        start,
        max_phi,
        method: Method::SausageGrid,
    };
    let report = run_sweep(family, grid, &opts)?;
    ensure_out(s)?;
    let p = s.out.join("sweep.csv");
    write_sweep_csv(&report, &p)?;
    Ok(json!({
        "schema_version": SCHEMA_VERSION,
        "command": "sweep",
        "report": report,
        "files": [file_name(&p)],
    }))
}

fn write_sweep_csv(r: &SweepReport, path: &Path) -> anyhow::Result<()> {
    let mut out = format!("{},regime,dimension,nearest,residual,arcs\n", r.parameter);
    for p in &r.points {
        let regime = serde_json::to_value(p.regime)?;
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            p.value,
            regime.as_str().unwrap_or(""),
            p.dimension,
            p.nearest,
            p.residual,
            p.arcs.len()
        ));
    }
    std::fs::write(path, out).with_context(|| format!("cannot write {}", path.display()))
}

pub fn string(s: &Settings, a: &StringArgs) -> anyhow::Result<Value> {
    let (seq, source, oracle) = if let Some(path) = &a.sequence {
        (load_sequence(path)?, json!({ "kind": "sequence", "file": file_name(path) }), None)
    } else {
        let g = match (a.alpha, a.ratio) {
            (Some(alpha), _) => SequenceGenerator::Power { alpha },
            (None, Some(ratio)) => SequenceGenerator::Geometric { ratio },
            _ => return Err(usage("give --alpha, --ratio or --sequence")),
        };
        g.validate()?;
        if a.n < 3 {
            return Err(usage("--n must be at least 3"));
        }
        (g.prefix(a.n), json!({ "kind": "generator", "generator": g }), Some(g.exact_dimension()))
    };
    string_report(s, &seq, source, oracle, a.geometric)
}

pub fn string_report(
    s: &Settings,
    seq: &[f64],
    source: Value,
    oracle: Option<f64>,
    geometric: bool,
) -> anyhow::Result<Value> {
    let fit = string_dimension(seq)?;
    let mono = is_monotone_string(seq)?;
    let mu = gaps(seq)?;
    let point_set = if geometric {
        let set = string_point_set(seq)?;
        let eps_min = match s.eps_min {
            Some(e) => e,
            None => string_eps_min(seq)?,
        };
        let eps = schedule(eps_min, s.eps_max, s.scales)?;
        Some(estimate_set(&set, true, &eps, Method::SausageGrid)?.1)
    } else {
        None
    };
    let d = fit.dimension;
    Ok(json!({
        "schema_version": SCHEMA_VERSION,
        "command": "string",
        "source": source,
        "n": seq.len(),
        "string_dimension": fit,
        "monotone": mono,
        "gap_sum": mu.iter().sum::<f64>(),
        "gap_sum_bound": 1.0 / seq[0],
        "point_set": point_set,
        "dimension": d,
        "oracle": oracle,
        "gap": d.zip(oracle).map(|(d, o)| (d - o).abs()),
    }))
}

pub fn oracle(a: &OracleArgs) -> anyhow::Result<Value> {
    if a.list {
        return Ok(json!({ "schema_version": SCHEMA_VERSION, "command": "oracle", "formulas": OracleQuery::NAMES }));
    }
    let name = a.formula.as_deref().ok_or_else(|| usage("formula name required"))?;
    if !OracleQuery::NAMES.contains(&name) {
        return Err(usage(format!("unknown formula {name:?}; known: {}", OracleQuery::NAMES.join(", "))));
    }
    let mut q = Map::new();
    q.insert("formula".into(), json!(name));
    for (key, v) in [("k", a.k), ("m", a.m), ("alpha", a.alpha), ("beta", a.beta), ("d1", a.d1)] {
        if let Some(v) = v {
            // integral values go in as integers so that integer parameters parse
            let jv = if v.fract() == 0.0 && v.abs() < 1e15 { json!(v as i64) } else { json!(v) };
            q.insert(key.into(), jv);
        }
    }
    let query: OracleQuery =
        serde_json::from_value(Value::Object(q)).map_err(|e| usage(format!("bad parameters for {name}: {e}")))?;
    let value = query.evaluate()?;
    Ok(json!({ "schema_version": SCHEMA_VERSION, "command": "oracle", "query": query, "value": value }))
}

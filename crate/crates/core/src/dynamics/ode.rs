//! Integrators: fixed-step RK4 for polar normal forms, adaptive
//! Dormand-Prince for general Cartesian fields.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::geometry::{Point2, Polar};

use super::field::VectorField2D;
use super::polar::{PolarSystem, TimeDirection};
use super::trajectory::{Solver, Termination, Trajectory};
use super::DynamicsError;

pub const DEFAULT_REVOLUTIONS: f64 = 200.0;
pub const DEFAULT_RHO_FLOOR: f64 = 1e-6;
pub const DEFAULT_RHO_CEILING: f64 = 1e6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolarOptions {
    pub step: f64,
    pub direction: TimeDirection,
    pub phi0: f64,
    /// Total angle to sweep.
    pub phi_budget: f64,
    pub rho_floor: f64,
    pub rho_ceiling: f64,
    /// Stop once `|rho - radius| <= tol`.
    pub cycle: Option<(f64, f64)>,
}

impl Default for PolarOptions {
    fn default() -> Self {
        PolarOptions {
            step: 1e-2,
            direction: TimeDirection::Forward,
            phi0: 0.0,
            phi_budget: 2.0 * PI * DEFAULT_REVOLUTIONS,
            rho_floor: DEFAULT_RHO_FLOOR,
            rho_ceiling: DEFAULT_RHO_CEILING,
            cycle: None,
        }
    }
}

/// Integrates `d rho / d phi = rho'(rho)` with classical RK4, one recorded
/// point per step.
pub fn integrate_polar(sys: &PolarSystem, rho0: f64, opts: &PolarOptions) -> Result<Trajectory, DynamicsError> {
    sys.validate()?;
    if !(rho0 > 0.0 && rho0.is_finite()) {
        return Err(DynamicsError::InvalidParameter("rho0 must be positive"));
    }
    if !(opts.step > 0.0 && opts.phi_budget >= 0.0) {
        return Err(DynamicsError::InvalidParameter("step must be positive"));
    }
    let rad = sys.radial_polynomial();
    let f = |rho: f64| rad.rho_dot(rho);
    let sgn = opts.direction.sign();
    let n = (opts.phi_budget / opts.step).ceil() as usize;
    let mut pts = Vec::with_capacity(n.min(10_000_000) + 1);
    let mut rho = rho0;
    let mut phi = opts.phi0;
    pts.push(Polar::new(rho, phi));
    let mut termination = Termination::PhiBudget;
    for i in 0..n {
        if rho < opts.rho_floor {
            termination = Termination::RhoFloor;
            break;
        }
        if rho > opts.rho_ceiling {
            termination = Termination::RhoCeiling;
            break;
        }
        if let Some((a, tol)) = opts.cycle {
            if (rho - a).abs() <= tol {
                termination = Termination::ConvergedToCycle;
                break;
            }
        }
        let h = sgn * if i + 1 == n { opts.phi_budget - opts.step * i as f64 } else { opts.step };
        let k1 = f(rho);
        let k2 = f(rho + 0.5 * h * k1);
        let k3 = f(rho + 0.5 * h * k2);
        let k4 = f(rho + h * k3);
        let next = rho + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if !next.is_finite() {
            return Err(DynamicsError::NonFinite { phi, rho });
        }
        rho = next;
        phi = opts.phi0 + sgn * (opts.step * i as f64 + h.abs());
        pts.push(Polar::new(rho, phi));
    }
    if termination == Termination::PhiBudget {
        // the last point may already sit beyond a limit
        if rho < opts.rho_floor {
            termination = Termination::RhoFloor;
        } else if rho > opts.rho_ceiling {
            termination = Termination::RhoCeiling;
        } else if opts.cycle.is_some_and(|(a, tol)| (rho - a).abs() <= tol) {
            termination = Termination::ConvergedToCycle;
        }
    }
    Ok(Trajectory {
        points: pts,
        solver: Solver::Rk4Polar,
        step: opts.step,
        direction: opts.direction,
        termination,
        label: format!("{sys:?} from rho={rho0}"),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CartesianOptions {
    pub rtol: f64,
    pub atol: f64,
    pub h_init: f64,
    /// Step cap; keeps the output interpolant accurate.
    pub h_max: f64,
    pub h_min: f64,
    pub direction: TimeDirection,
    pub revolutions: f64,
    pub r_min: f64,
    pub r_max: f64,
    /// Output spacing limits between recorded points.
    pub max_chord: f64,
    pub max_dphi: f64,
    pub max_steps: usize,
}

impl Default for CartesianOptions {
    fn default() -> Self {
        CartesianOptions {
            rtol: 1e-9,
            atol: 1e-14,
            h_init: 1e-3,
            h_max: 0.05,
            h_min: 1e-13,
            direction: TimeDirection::Forward,
            revolutions: DEFAULT_REVOLUTIONS,
            r_min: DEFAULT_RHO_FLOOR,
            r_max: DEFAULT_RHO_CEILING,
            max_chord: f64::INFINITY,
            max_dphi: 0.05,
            max_steps: 20_000_000,
        }
    }
}

const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
// continuous extension coefficients (Hairer, Norsett & Wanner)
const D: [f64; 7] = [
    -12715105075.0 / 11282082432.0,
    0.0,
    87487479700.0 / 32700410799.0,
    -10690763975.0 / 1880347072.0,
    701980252875.0 / 199316789632.0,
    -1453857185.0 / 822651844.0,
    69997945.0 / 29380423.0,
];
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

fn wrap(d: f64) -> f64 {
    let mut d = d % (2.0 * PI);
    if d > PI {
        d -= 2.0 * PI;
    } else if d <= -PI {
        d += 2.0 * PI;
    }
    d
}

/// Adaptive Dormand-Prince 5(4) integration with its fourth-order dense output,
/// converted to polar form with unwrapped angle.
pub fn integrate_cartesian(
    field: &dyn VectorField2D,
    x0: Point2,
    opts: &CartesianOptions,
) -> Result<Trajectory, DynamicsError> {
    if !(x0.is_finite() && x0.norm() > 0.0) {
        return Err(DynamicsError::InvalidParameter("x0 must be finite and nonzero"));
    }
    let sgn = opts.direction.sign();
    let f = |x: Point2| -> Result<Point2, DynamicsError> { Ok(field.eval(x)? * sgn) };
    let budget = 2.0 * PI * opts.revolutions;
    let mut y = x0;
    let mut fy = f(y)?;
    let mut t = 0.0;
    let mut h = opts.h_init.min(opts.h_max);
    let phi0 = y.angle();
    let mut phi = phi0;
    let mut pts = vec![Polar::new(y.norm(), phi)];
    let mut steps = 0usize;
    let termination;
    loop {
        steps += 1;
        if steps > opts.max_steps {
            return Err(DynamicsError::StepLimit { t, x: y.x, y: y.y });
        }
        let mut k = [Point2::ORIGIN; 7];
        k[0] = fy;
        let mut ok = true;
        for s in 1..7 {
            let mut acc = y;
            for j in 0..s {
                if A[s][j] != 0.0 {
                    acc = acc + k[j] * (h * A[s][j]);
                }
            }
            match f(acc) {
                Ok(v) => k[s] = v,
                Err(_) => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            h *= 0.2;
            if h < opts.h_min {
                return Err(DynamicsError::StepUnderflow { t, x: y.x, y: y.y });
            }
            continue;
        }
        let mut y1 = y;
        for j in 0..6 {
            y1 = y1 + k[j] * (h * A[6][j]);
        }
        let mut err = Point2::ORIGIN;
        for j in 0..7 {
            err = err + k[j] * (h * E[j]);
        }
        let sc = opts.atol + opts.rtol * y.norm().max(y1.norm());
        let en = (err.x.abs().max(err.y.abs())) / sc;
        if !y1.is_finite() || !en.is_finite() || en > 1.0 {
            let fac = if en.is_finite() { (0.9 * en.powf(-0.2)).clamp(0.2, 1.0) } else { 0.2 };
            h *= fac;
            if h < opts.h_min {
                return Err(DynamicsError::StepUnderflow { t, x: y.x, y: y.y });
            }
            continue;
        }
        let f1 = k[6];
        // dense output between y and y1
        let r1 = y1.norm();
        let dphi = wrap(y1.angle() - y.angle()).abs();
        let chord = (y1 - y).norm();
        let n = ((chord / opts.max_chord).max(dphi / opts.max_dphi).ceil() as usize).max(1);
        let r2 = y1 - y;
        let r3 = fy * h - r2;
        let r4 = r2 - f1 * h - r3;
        let mut r5 = Point2::ORIGIN;
        for j in 0..7 {
            r5 = r5 + k[j] * (h * D[j]);
        }
        for i in 1..=n {
            let s = i as f64 / n as f64;
            let p = if i == n { y1 } else { y + (r2 + (r3 + (r4 + r5 * (1.0 - s)) * s) * (1.0 - s)) * s };
            let prev = pts.last().expect("nonempty");
            phi = prev.phi + wrap(p.angle() - prev.phi);
            pts.push(Polar::new(p.norm(), phi));
        }
        t += h;
        y = y1;
        fy = f1;
        if r1 < opts.r_min {
            termination = Termination::RhoFloor;
            break;
        }
        if r1 > opts.r_max {
            termination = Termination::RhoCeiling;
            break;
        }
        if (phi - phi0).abs() >= budget {
            termination = Termination::PhiBudget;
            break;
        }
        let fac = if en > 0.0 { (0.9 * en.powf(-0.2)).clamp(0.2, 5.0) } else { 5.0 };
        h = (h * fac).min(opts.h_max);
    }
    Ok(Trajectory {
        points: pts,
        solver: Solver::DormandPrince45,
        step: opts.h_max,
        direction: opts.direction,
        termination,
        label: format!("{} from ({}, {})", field.description(), x0.x, x0.y),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::systems::{damped, rotation};

    #[test]
    fn rotation_keeps_radius() {
        let opts = CartesianOptions { revolutions: 10.0, ..Default::default() };
        let t = integrate_cartesian(&rotation(), Point2::new(1.0, 0.0), &opts).unwrap();
        let worst = t.points.iter().map(|p| (p.r - 1.0).abs()).fold(0.0, f64::max);
        assert!(worst < 1e-8, "{worst}");
        assert_eq!(t.termination, Termination::PhiBudget);
        assert!(t.angle_monotone());
        assert!((t.last().unwrap().phi - 20.0 * PI).abs() < 0.1);
    }

    #[test]
    fn damped_oscillator_decays() {
        let opts = CartesianOptions { revolutions: 20.0, ..Default::default() };
        let t = integrate_cartesian(&damped(1.0, 2, 1), Point2::new(2.0, 0.0), &opts).unwrap();
        let r0 = t.points[0].r;
        let r1 = t.last().unwrap().r;
        assert!(r1 < 0.5 * r0, "{r1}");
        // radius never increases over a full turn
        let turn: Vec<f64> = t.points.iter().step_by(200).map(|p| p.r).collect();
        assert!(turn.windows(2).all(|w| w[1] <= w[0] + 1e-12));
    }

    #[test]
    fn takens_l1_closed_form() {
        let sys = PolarSystem::TakensInverted { l: 1, a: vec![0.0] };
        let opts = PolarOptions { step: 0.01, phi_budget: 40.0, ..Default::default() };
        let t = integrate_polar(&sys, 10.0, &opts).unwrap();
        assert_eq!(t.len(), 4001);
        let worst = t
            .points
            .iter()
            .map(|p| ((p.r - (100.0 - 2.0 * p.phi).sqrt()) / p.r).abs())
            .fold(0.0, f64::max);
        assert!(worst < 1e-10, "{worst}");
        assert!((t.last().unwrap().phi - 40.0).abs() < 1e-9);
    }

    #[test]
    fn converges_to_simple_cycle() {
        // the cycle repels in forward time, so approach it backward
        let sys = PolarSystem::TakensInverted { l: 1, a: vec![-1.0 / 25.0] };
        let opts = PolarOptions {
            step: 0.05,
            phi_budget: 2000.0,
            direction: TimeDirection::Backward,
            cycle: Some((5.0, 1e-9)),
            ..Default::default()
        };
        let t = integrate_polar(&sys, 2.0, &opts).unwrap();
        assert_eq!(t.termination, Termination::ConvergedToCycle);
        assert!((t.last().unwrap().r - 5.0).abs() <= 1e-9);
    }

    #[test]
    fn floor_and_backward() {
        let sys = PolarSystem::TakensInverted { l: 1, a: vec![0.0] };
        let opts = PolarOptions { step: 0.01, phi_budget: 100.0, rho_floor: 0.5, ..Default::default() };
        let t = integrate_polar(&sys, 10.0, &opts).unwrap();
        assert_eq!(t.termination, Termination::RhoFloor);
        let opts = PolarOptions { direction: TimeDirection::Backward, phi_budget: 10.0, ..Default::default() };
        let t = integrate_polar(&sys, 10.0, &opts).unwrap();
        let last = t.last().unwrap();
        assert!((last.phi + 10.0).abs() < 1e-9);
        assert!((last.r - 120f64.sqrt()).abs() < 1e-9);
    }
}

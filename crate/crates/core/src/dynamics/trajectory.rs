use serde::{Deserialize, Serialize};

use crate::geometry::{Point2, Polar, SampledCurve};

use super::polar::TimeDirection;
use super::DynamicsError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Solver {
    /// Classical fixed-step RK4 in `phi`.
    Rk4Polar,
    /// Adaptive Dormand-Prince 5(4) in `t`.
    DormandPrince45,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    PhiBudget,
    RhoFloor,
    RhoCeiling,
    ConvergedToCycle,
}

/// An integrated orbit in polar form with unwrapped angle, in integration
/// order. Backward runs have decreasing `phi`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub points: Vec<Polar>,
    pub solver: Solver,
    /// Fixed step, or the step cap of the adaptive solver.
    pub step: f64,
    pub direction: TimeDirection,
    pub termination: Termination,
    pub label: String,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn last(&self) -> Option<Polar> {
        self.points.last().copied()
    }

    pub fn cartesian_points(&self) -> Vec<Point2> {
        self.points.iter().map(|p| p.to_cartesian()).collect()
    }

    /// `true` when `phi` is strictly monotone along the whole orbit.
    pub fn angle_monotone(&self) -> bool {
        strictly_monotone(&self.points)
    }

    /// The orbit as a curve: polar when the angle is monotone, Cartesian
    /// otherwise.
    pub fn curve(&self) -> Result<SampledCurve, DynamicsError> {
        if self.angle_monotone() {
            Ok(SampledCurve::polar(self.points.clone(), self.label.clone())?)
        } else {
            Ok(SampledCurve::cartesian(self.cartesian_points(), self.label.clone())?)
        }
    }

    /// Appends a continuation that starts at this trajectory's last point;
    /// the continuation's first point is dropped.
    pub fn extend(&mut self, more: Trajectory) {
        let skip = usize::from(!self.points.is_empty());
        self.points.extend(more.points.into_iter().skip(skip));
        self.termination = more.termination;
    }
}

fn strictly_monotone(p: &[Polar]) -> bool {
    if p.len() < 2 {
        return true;
    }
    let up = p[1].phi > p[0].phi;
    p.windows(2).all(|w| if up { w[1].phi > w[0].phi } else { w[1].phi < w[0].phi })
}

/// Radial window for [`extract_arc`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Window {
    NearOrigin { c: f64 },
    NearInfinity { c: f64 },
    Annulus { inner: f64, outer: f64 },
}

impl Window {
    pub fn around(a: f64, delta: f64) -> Window {
        Window::Annulus { inner: a - delta, outer: a + delta }
    }

    pub fn contains(&self, rho: f64) -> bool {
        match *self {
            Window::NearOrigin { c } => rho <= c,
            Window::NearInfinity { c } => rho >= c,
            Window::Annulus { inner, outer } => rho >= inner && rho <= outer,
        }
    }
}

/// The last maximal run of the trajectory inside the window, as a polar curve.
pub fn extract_arc(t: &Trajectory, window: Window) -> Result<SampledCurve, DynamicsError> {
    let end = t.points.iter().rposition(|p| window.contains(p.r)).ok_or(DynamicsError::EmptyWindow)?;
    let start = t.points[..end].iter().rposition(|p| !window.contains(p.r)).map_or(0, |i| i + 1);
    if end - start < 1 {
        return Err(DynamicsError::EmptyWindow);
    }
    let pts = t.points[start..=end].to_vec();
    if !strictly_monotone(&pts) {
        return Err(DynamicsError::NotMonotone);
    }
    Ok(SampledCurve::polar(pts, format!("arc of {}", t.label))?)
}

//! Rotationally symmetric normal forms with `phi' = 1`.

use serde::{Deserialize, Serialize};

use crate::geometry::Point2;

use super::field::{closure_field, Field};
use super::DynamicsError;

/// Radial equations, written for the system's own radius `rho`:
///
/// * `hopf`: `rho' = -rho (rho^2k + a)`
/// * `hopf_inverted`: `rho' = rho (rho^-2k + a)`
/// * `takens`: `rho' = rho (rho^2l + sum a_j rho^2j)`
/// * `takens_inverted`: `rho' = -rho (rho^-2l + sum a_j rho^-2j)`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PolarSystem {
    Hopf { k: u32, a: f64 },
    HopfInverted { k: u32, a: f64 },
    Takens { l: u32, a: Vec<f64> },
    TakensInverted { l: u32, a: Vec<f64> },
}

/// Time direction along a trajectory.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TimeDirection {
    Forward,
    Backward,
}

impl TimeDirection {
    pub fn sign(self) -> f64 {
        match self {
            TimeDirection::Forward => 1.0,
            TimeDirection::Backward => -1.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitCycle {
    /// Radius in the system's own variable.
    pub radius: f64,
    pub multiplicity: u32,
    /// Direction in which nearby trajectories outside the cycle approach it.
    pub approach_outside: TimeDirection,
    pub approach_inside: TimeDirection,
}

impl LimitCycle {
    /// `2 - 1/m`.
    pub fn dimension(&self) -> f64 {
        2.0 - 1.0 / self.multiplicity as f64
    }
}

/// `G(rho) = sign * sum c_i r^i` with `r = rho` or `r = 1/rho`.
#[derive(Clone, Debug, PartialEq)]
pub struct RadialPolynomial {
    pub coeffs: Vec<f64>,
    pub sign: f64,
    pub reciprocal: bool,
}

impl RadialPolynomial {
    pub fn eval(&self, r: f64) -> f64 {
        horner(&self.coeffs, r)
    }

    /// `rho G(rho)`.
    pub fn rho_dot(&self, rho: f64) -> f64 {
        let r = if self.reciprocal { 1.0 / rho } else { rho };
        self.sign * rho * self.eval(r)
    }
}

fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &ci| acc * x + ci)
}

fn derivative(c: &[f64]) -> Vec<f64> {
    c.iter().enumerate().skip(1).map(|(i, &ci)| i as f64 * ci).collect()
}

fn trimmed(c: &[f64]) -> &[f64] {
    let n = c.iter().rposition(|&x| x != 0.0).map_or(0, |i| i + 1);
    &c[..n]
}

const ROOT_TOL: f64 = 1e-12;
const VANISH_TOL: f64 = 1e-8;

fn bisect(c: &[f64], mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = horner(c, lo);
    while hi - lo > ROOT_TOL * hi.abs().max(1.0) {
        let mid = 0.5 * (lo + hi);
        let fm = horner(c, mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn magnitude(c: &[f64], x: f64) -> f64 {
    c.iter().enumerate().map(|(i, &ci)| (ci * x.powi(i as i32)).abs()).sum()
}

/// Real roots of `c` in the open interval `(lo, hi)`, including those of
/// even multiplicity: the interval is split at the critical points (found
/// recursively) so that `c` is monotone on each piece.
pub fn real_roots(c: &[f64], lo: f64, hi: f64) -> Vec<f64> {
    let c = trimmed(c);
    if c.len() < 2 {
        return Vec::new();
    }
    let crit = real_roots(&derivative(c), lo, hi);
    let mut knots = vec![lo];
    knots.extend(crit.iter().copied());
    knots.push(hi);
    let mut roots: Vec<f64> = Vec::new();
    let push = |r: f64, roots: &mut Vec<f64>| {
        if r > lo && r < hi && roots.last().is_none_or(|&q| r - q > 1e-9 * r.abs().max(1.0)) {
            roots.push(r);
        }
    };
    for w in knots.windows(2) {
        let (a, b) = (w[0], w[1]);
        let fa = horner(c, a);
        let fb = horner(c, b);
        if a > lo && fa.abs() <= VANISH_TOL * 1e-4 * magnitude(c, a) {
            push(a, &mut roots);
            continue;
        }
        if fa != 0.0 && fb != 0.0 && (fa < 0.0) != (fb < 0.0) {
            push(bisect(c, a, b), &mut roots);
        }
    }
    roots
}

/// Order of vanishing of `c` at `x`: the first `j` with
/// `|c^(j)(x) x^j / j!|` above `1e-8` of the polynomial's magnitude.
pub fn multiplicity(c: &[f64], x: f64) -> u32 {
    let scale = magnitude(c, x).max(f64::MIN_POSITIVE);
    let mut d = trimmed(c).to_vec();
    let mut fact = 1.0;
    for j in 0..d.len() as u32 {
        if j > 0 {
            fact *= j as f64;
        }
        let tj = (horner(&d, x) * x.abs().max(1e-300).powi(j as i32) / fact).abs();
        if tj > VANISH_TOL * scale {
            return j;
        }
        d = derivative(&d);
    }
    trimmed(c).len() as u32
}

impl PolarSystem {
    pub fn validate(&self) -> Result<(), DynamicsError> {
        match self {
            PolarSystem::Hopf { k, a } | PolarSystem::HopfInverted { k, a } => {
                if *k < 1 || *k > 20 {
                    return Err(DynamicsError::InvalidParameter("hopf needs 1 <= k <= 20"));
                }
                if !a.is_finite() {
                    return Err(DynamicsError::InvalidParameter("hopf parameter a must be finite"));
                }
            }
            PolarSystem::Takens { l, a } | PolarSystem::TakensInverted { l, a } => {
                if *l < 1 || *l > 20 {
                    return Err(DynamicsError::InvalidParameter("takens needs 1 <= l <= 20"));
                }
                if a.len() != *l as usize {
                    return Err(DynamicsError::InvalidParameter("takens needs exactly l coefficients a_0..a_(l-1)"));
                }
                if a.iter().any(|x| !x.is_finite()) {
                    return Err(DynamicsError::InvalidParameter("takens coefficients must be finite"));
                }
            }
        }
        Ok(())
    }

    pub fn is_inverted(&self) -> bool {
        matches!(self, PolarSystem::HopfInverted { .. } | PolarSystem::TakensInverted { .. })
    }

    /// The same system written in `1/rho`.
    pub fn inverted(&self) -> PolarSystem {
        match self.clone() {
            PolarSystem::Hopf { k, a } => PolarSystem::HopfInverted { k, a },
            PolarSystem::HopfInverted { k, a } => PolarSystem::Hopf { k, a },
            PolarSystem::Takens { l, a } => PolarSystem::TakensInverted { l, a },
            PolarSystem::TakensInverted { l, a } => PolarSystem::Takens { l, a },
        }
    }

    pub fn radial_polynomial(&self) -> RadialPolynomial {
        let (deg, sign) = match self {
            PolarSystem::Hopf { k, .. } => (2 * k, -1.0),
            PolarSystem::HopfInverted { k, .. } => (2 * k, 1.0),
            PolarSystem::Takens { l, .. } => (2 * l, 1.0),
            PolarSystem::TakensInverted { l, .. } => (2 * l, -1.0),
        };
        let mut coeffs = vec![0.0; deg as usize + 1];
        coeffs[deg as usize] = 1.0;
        match self {
            PolarSystem::Hopf { a, .. } | PolarSystem::HopfInverted { a, .. } => coeffs[0] = *a,
            PolarSystem::Takens { a, .. } | PolarSystem::TakensInverted { a, .. } => {
                for (j, &aj) in a.iter().enumerate() {
                    coeffs[2 * j] += aj;
                }
            }
        }
        RadialPolynomial { coeffs, sign, reciprocal: self.is_inverted() }
    }

    /// `rho'` (equivalently `d rho / d phi`).
    pub fn rho_dot(&self, rho: f64) -> f64 {
        self.radial_polynomial().rho_dot(rho)
    }

    /// Cartesian form `x' = x G - y`, `y' = y G + x` with `rho' = rho G`.
    pub fn to_field(&self) -> Field {
        let sys = self.clone();
        let p = self.radial_polynomial();
        closure_field(format!("{sys:?}"), move |x| {
            let rho = x.norm();
            let r = if p.reciprocal {
                if rho == 0.0 {
                    return None;
                }
                1.0 / rho
            } else {
                rho
            };
            let g = p.sign * p.eval(r);
            Some(Point2::new(x.x * g - x.y, x.y * g + x.x))
        })
    }

    /// Limit cycles sorted by radius, with multiplicities from the radial
    /// polynomial.
    pub fn limit_cycles(&self) -> Vec<LimitCycle> {
        let p = self.radial_polynomial();
        let c = &p.coeffs;
        let lead = c[c.len() - 1].abs();
        let bound = 1.0 + c.iter().map(|x| x.abs() / lead).fold(0.0, f64::max);
        let roots = real_roots(c, 0.0, bound);
        let mut cycles: Vec<LimitCycle> = roots
            .iter()
            .enumerate()
            .map(|(i, &r)| {
                let m = multiplicity(c, r);
                let radius = if p.reciprocal { 1.0 / r } else { r };
                // probe halfway to the neighbouring roots
                let gap_lo = if i > 0 { r - roots[i - 1] } else { r };
                let gap_hi = if i + 1 < roots.len() { roots[i + 1] - r } else { r };
                let d = 0.25 * gap_lo.min(gap_hi).min(1e-2 * r.max(1e-3));
                let (outside_rho, inside_rho) =
                    if p.reciprocal { (1.0 / (r - d), 1.0 / (r + d)) } else { (r + d, r - d) };
                let dir = |rho: f64, outside: bool| {
                    let towards = if outside { -1.0 } else { 1.0 };
                    if self.rho_dot(rho) * towards > 0.0 {
                        TimeDirection::Forward
                    } else {
                        TimeDirection::Backward
                    }
                };
                LimitCycle {
                    radius,
                    multiplicity: m,
                    approach_outside: dir(outside_rho, true),
                    approach_inside: dir(inside_rho, false),
                }
            })
            .collect();
        cycles.sort_by(|a, b| a.radius.total_cmp(&b.radius));
        cycles
    }

    /// Order `k` of the weak focus at the system's singular end
    /// (origin, or infinity for inverted systems), or `None` when the
    /// constant term is nonzero and trajectories spiral exponentially.
    pub fn focus_order(&self) -> Option<u32> {
        let c = self.radial_polynomial().coeffs;
        if c[0] != 0.0 {
            return None;
        }
        c.iter().position(|&x| x != 0.0).map(|i| i as u32 / 2)
    }

    /// `4k/(2k+1)` for a weak focus of order `k`, `1` otherwise.
    pub fn focus_dim(&self) -> Option<f64> {
        Some(match self.focus_order() {
            Some(k) => 4.0 * k as f64 / (2 * k + 1) as f64,
            None => 1.0,
        })
    }

    /// Direction in which trajectories near the singular end approach it.
    pub fn focus_approach(&self) -> TimeDirection {
        // rho' = rho * sign * P(r); near the end r -> 0 and P ~ lowest term
        let p = self.radial_polynomial();
        let low = p.coeffs.iter().copied().find(|&x| x != 0.0).unwrap_or(1.0);
        let g = p.sign * low;
        // own variable shrinks when g < 0; at infinity (reciprocal) it must grow
        let towards_end = if p.reciprocal { g > 0.0 } else { g < 0.0 };
        if towards_end {
            TimeDirection::Forward
        } else {
            TimeDirection::Backward
        }
    }
}

//! Named planar systems and their inversions in closed form.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::geometry::Point2;

use super::field::{closure_field, polynomial_field, Field};
use super::polar::PolarSystem;
use super::poly::{Poly2, PolynomialField};
use super::DynamicsError;

/// `(-y, x)`.
pub fn rotation() -> PolynomialField {
    PolynomialField::new(Poly2::y().scale(-1.0), Poly2::x())
}

/// `Rx - gamma x g(|x|)`.
pub fn rx_gamma_g(r: [[f64; 2]; 2], gamma: f64, g: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Field {
    closure_field("Rx - gamma x g(|x|)", move |x| {
        let rx = Point2::new(r[0][0] * x.x + r[0][1] * x.y, r[1][0] * x.x + r[1][1] * x.y);
        Some(rx - x * (gamma * g(x.norm())))
    })
}

/// Closed-form inversion of [`rx_gamma_g`] for antisymmetric `R`:
/// `Ru + gamma u g(1/|u|)`.
pub fn rx_gamma_g_inverted(r: [[f64; 2]; 2], gamma: f64, g: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Field {
    closure_field("Ru + gamma u g(1/|u|)", move |u| {
        let n = u.norm();
        if n == 0.0 {
            return None;
        }
        let ru = Point2::new(r[0][0] * u.x + r[0][1] * u.y, r[1][0] * u.x + r[1][1] * u.y);
        Some(ru + u * (gamma * g(1.0 / n)))
    })
}

/// `true` when `Rx . x` vanishes at every sample.
pub fn is_rotation_like(r: [[f64; 2]; 2], samples: &[Point2], tol: f64) -> bool {
    samples.iter().all(|x| {
        let rx = Point2::new(r[0][0] * x.x + r[0][1] * x.y, r[1][0] * x.x + r[1][1] * x.y);
        rx.dot(*x).abs() <= tol * x.norm_sq().max(f64::MIN_POSITIVE)
    })
}

/// `x' = -y - x (s^k + a)`, `y' = x - y (s^k + a)`, `s = x^2 + y^2`.
pub fn hopf(k: u32, a: f64) -> PolynomialField {
    let g = Poly2::norm_sq().pow(k).add(&Poly2::constant(a));
    PolynomialField::new(
        Poly2::y().scale(-1.0).sub(&Poly2::x().mul(&g)),
        Poly2::x().sub(&Poly2::y().mul(&g)),
    )
}

/// Inversion of [`hopf`]: `u' = -v + u (s^-k + a)`, `v' = u + v (s^-k + a)`.
pub fn hopf_inverted(k: u32, a: f64) -> Field {
    closure_field(format!("inverted hopf k={k} a={a}"), move |u| {
        let s = u.norm_sq();
        if s == 0.0 {
            return None;
        }
        let g = s.powi(-(k as i32)) + a;
        Some(Point2::new(-u.y + u.x * g, u.x + u.y * g))
    })
}

/// [`hopf_inverted`] times `s^k`: `u' = -v s^k + u (1 + a s^k)`, `v' = u s^k + v (1 + a s^k)`.
pub fn hopf_inverted_polynomial(k: u32, a: f64) -> PolynomialField {
    let sk = Poly2::norm_sq().pow(k);
    let g = Poly2::constant(1.0).add(&sk.scale(a));
    PolynomialField::new(
        Poly2::y().scale(-1.0).mul(&sk).add(&Poly2::x().mul(&g)),
        Poly2::x().mul(&sk).add(&Poly2::y().mul(&g)),
    )
}

/// `x' = -y - C x^beta y^alpha`, `y' = x`.
pub fn damped(c: f64, alpha: u32, beta: u32) -> PolynomialField {
    PolynomialField::new(
        Poly2::from_terms([(-1.0, 0, 1), (-c, beta, alpha)]),
        Poly2::x(),
    )
}

/// Inversion of [`damped`]:
/// `u' = -v + C u^beta v^alpha (u^2 - v^2) / s^(alpha+beta)`,
/// `v' = u + 2C u^(beta+1) v^(alpha+1) / s^(alpha+beta)`.
pub fn damped_inverted(c: f64, alpha: u32, beta: u32) -> Field {
    closure_field(format!("inverted damped oscillator C={c} alpha={alpha} beta={beta}"), move |w| {
        let s = w.norm_sq();
        if s == 0.0 {
            return None;
        }
        let (u, v) = (w.x, w.y);
        let m = c * u.powi(beta as i32) * v.powi(alpha as i32) / s.powi((alpha + beta) as i32);
        Some(Point2::new(-v + m * (u * u - v * v), u + 2.0 * m * u * v))
    })
}

/// [`damped_inverted`] times `s^(alpha+beta)`.
pub fn damped_inverted_polynomial(c: f64, alpha: u32, beta: u32) -> PolynomialField {
    let sn = Poly2::norm_sq().pow(alpha + beta);
    let m = Poly2::monomial(c, beta, alpha);
    PolynomialField::new(
        Poly2::y().scale(-1.0).mul(&sn).add(&m.mul(&Poly2::from_terms([(1.0, 2, 0), (-1.0, 0, 2)]))),
        Poly2::x().mul(&sn).add(&m.mul(&Poly2::monomial(2.0, 1, 1))),
    )
}

/// `x' = -y + sum a_i x^i`, `y' = x`.
pub fn lienard(coeffs: &BTreeMap<u32, f64>) -> PolynomialField {
    let mut p = Poly2::y().scale(-1.0);
    for (&i, &a) in coeffs {
        p.add_term(a, i, 0);
    }
    PolynomialField::new(p, Poly2::x())
}

/// Inversion of [`lienard`]: `u' = -v + (v^2 - u^2) p~`, `v' = u - 2uv p~`
/// with `p~ = sum a_i u^i / s^i`.
pub fn lienard_inverted(coeffs: &BTreeMap<u32, f64>) -> Field {
    let coeffs: Vec<(u32, f64)> = coeffs.iter().map(|(&i, &a)| (i, a)).collect();
    closure_field("inverted lienard", move |w| {
        let s = w.norm_sq();
        if s == 0.0 {
            return None;
        }
        let (u, v) = (w.x, w.y);
        let pt: f64 = coeffs.iter().map(|&(i, a)| a * (u / s).powi(i as i32)).sum();
        Some(Point2::new(-v + (v * v - u * u) * pt, u - 2.0 * u * v * pt))
    })
}

/// A system by name, as read from JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SystemSpec {
    Hopf { k: u32, a: f64 },
    HopfInverted { k: u32, a: f64 },
    Takens { l: u32, a: Vec<f64> },
    TakensInverted { l: u32, a: Vec<f64> },
    /// Coefficients keyed by the power of `x` (decimal strings in JSON).
    Lienard { coeffs: BTreeMap<String, f64> },
    LienardInverted { coeffs: BTreeMap<String, f64> },
    Damped { c: f64, alpha: u32, beta: u32 },
    DampedInverted { c: f64, alpha: u32, beta: u32 },
    Rotation,
}

/// Which end of the phase portrait a spiral of interest sits at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SingularEnd {
    Origin,
    Infinity,
}

fn parse_powers(coeffs: &BTreeMap<String, f64>) -> Result<BTreeMap<u32, f64>, DynamicsError> {
    coeffs
        .iter()
        .map(|(k, &a)| {
            let i: u32 = k.trim().parse().map_err(|_| DynamicsError::InvalidParameter("lienard powers must be integers"))?;
            Ok((i, a))
        })
        .collect()
}

impl SystemSpec {
    pub fn lienard(coeffs: &BTreeMap<u32, f64>) -> SystemSpec {
        SystemSpec::Lienard { coeffs: coeffs.iter().map(|(k, v)| (k.to_string(), *v)).collect() }
    }

    /// Lienard coefficients keyed by power.
    pub fn lienard_powers(&self) -> Result<BTreeMap<u32, f64>, DynamicsError> {
        match self {
            SystemSpec::Lienard { coeffs } | SystemSpec::LienardInverted { coeffs } => parse_powers(coeffs),
            _ => Err(DynamicsError::InvalidParameter("not a lienard system")),
        }
    }

    pub fn polar(&self) -> Option<PolarSystem> {
        Some(match self {
            SystemSpec::Hopf { k, a } => PolarSystem::Hopf { k: *k, a: *a },
            SystemSpec::HopfInverted { k, a } => PolarSystem::HopfInverted { k: *k, a: *a },
            SystemSpec::Takens { l, a } => PolarSystem::Takens { l: *l, a: a.clone() },
            SystemSpec::TakensInverted { l, a } => PolarSystem::TakensInverted { l: *l, a: a.clone() },
            _ => return None,
        })
    }

    pub fn validate(&self) -> Result<(), DynamicsError> {
        if let Some(p) = self.polar() {
            return p.validate();
        }
        match self {
            SystemSpec::Lienard { .. } | SystemSpec::LienardInverted { .. } => {
                let coeffs = self.lienard_powers()?;
                if coeffs.values().any(|a| !a.is_finite()) {
                    return Err(DynamicsError::InvalidParameter("lienard coefficients must be finite"));
                }
                if coeffs.keys().any(|&i| i < 2 || i > 40) {
                    return Err(DynamicsError::InvalidParameter("lienard powers must lie in 2..=40"));
                }
            }
            SystemSpec::Damped { c, alpha, beta } | SystemSpec::DampedInverted { c, alpha, beta } => {
                if !c.is_finite() || alpha % 2 != 0 || beta % 2 != 1 || alpha + beta > 40 {
                    return Err(DynamicsError::InvalidParameter("damped oscillator needs finite C, even alpha, odd beta"));
                }
            }
            _ => {}
        }
        Ok(())
    }

    /// The field in Cartesian coordinates.
    pub fn field(&self) -> Result<Field, DynamicsError> {
        self.validate()?;
        Ok(match self {
            SystemSpec::Hopf { k, a } => polynomial_field(hopf(*k, *a)),
            SystemSpec::HopfInverted { k, a } => hopf_inverted(*k, *a),
            SystemSpec::Takens { .. } | SystemSpec::TakensInverted { .. } => self.polar().expect("polar").to_field(),
            SystemSpec::Lienard { .. } => polynomial_field(lienard(&self.lienard_powers()?)),
            SystemSpec::LienardInverted { .. } => lienard_inverted(&self.lienard_powers()?),
            SystemSpec::Damped { c, alpha, beta } => polynomial_field(damped(*c, *alpha, *beta)),
            SystemSpec::DampedInverted { c, alpha, beta } => damped_inverted(*c, *alpha, *beta),
            SystemSpec::Rotation => Arc::new(rotation()),
        })
    }

    /// The same system in the inverted coordinate.
    pub fn inverted(&self) -> SystemSpec {
        match self.clone() {
            SystemSpec::Hopf { k, a } => SystemSpec::HopfInverted { k, a },
            SystemSpec::HopfInverted { k, a } => SystemSpec::Hopf { k, a },
            SystemSpec::Takens { l, a } => SystemSpec::TakensInverted { l, a },
            SystemSpec::TakensInverted { l, a } => SystemSpec::Takens { l, a },
            SystemSpec::Lienard { coeffs } => SystemSpec::LienardInverted { coeffs },
            SystemSpec::LienardInverted { coeffs } => SystemSpec::Lienard { coeffs },
            SystemSpec::Damped { c, alpha, beta } => SystemSpec::DampedInverted { c, alpha, beta },
            SystemSpec::DampedInverted { c, alpha, beta } => SystemSpec::Damped { c, alpha, beta },
            SystemSpec::Rotation => SystemSpec::Rotation,
        }
    }

    /// Where the focus of interest lives: inverted systems are studied at infinity.
    pub fn focus_end(&self) -> SingularEnd {
        match self {
            SystemSpec::HopfInverted { .. }
            | SystemSpec::TakensInverted { .. }
            | SystemSpec::LienardInverted { .. }
            | SystemSpec::DampedInverted { .. } => SingularEnd::Infinity,
            _ => SingularEnd::Origin,
        }
    }

    /// Box dimension of a spiral trajectory accumulating at the focus, when
    /// the focus is of a known type. `None` for a center.
    pub fn focus_dim(&self) -> Option<f64> {
        let k = match self {
            SystemSpec::Hopf { .. }
            | SystemSpec::HopfInverted { .. }
            | SystemSpec::Takens { .. }
            | SystemSpec::TakensInverted { .. } => return self.polar()?.focus_dim(),
            SystemSpec::Lienard { .. } | SystemSpec::LienardInverted { .. } => {
                let coeffs = self.lienard_powers().ok()?;
                coeffs.iter().find(|(&i, &a)| i % 2 == 1 && a != 0.0).map(|(&i, _)| (i - 1) / 2)?
            }
            SystemSpec::Damped { c, alpha, beta } | SystemSpec::DampedInverted { c, alpha, beta } => {
                if *c == 0.0 {
                    return None;
                }
                (alpha + beta - 1) / 2
            }
            SystemSpec::Rotation => return None,
        };
        Some(4.0 * k as f64 / (2 * k + 1) as f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::field::{invert_field, max_relative_deviation, polynomialize, weak_focus_invert};

    fn samples() -> Vec<Point2> {
        (0..60).map(|i| Point2::from_polar(0.2 + 0.15 * i as f64, 1.3 * i as f64 + 0.1)).collect()
    }

    #[test]
    fn hopf_inversions_agree() {
        let s = samples();
        for (k, a) in [(1, 0.0), (1, -0.04), (2, 0.3)] {
            let num = invert_field(polynomial_field(hopf(k, a)));
            let closed = hopf_inverted(k, a);
            assert!(max_relative_deviation(num.as_ref(), closed.as_ref(), &s).unwrap() < 1e-12);
            let poly = hopf_inverted_polynomial(k, a);
            let scaled = polynomialize(closed, k);
            assert!(max_relative_deviation(&poly, scaled.as_ref(), &s).unwrap() < 1e-12);
        }
    }

    #[test]
    fn damped_inversion_paths_agree() {
        let s = samples();
        let num = invert_field(polynomial_field(damped(1.0, 2, 1)));
        let closed = damped_inverted(1.0, 2, 1);
        assert!(max_relative_deviation(num.as_ref(), closed.as_ref(), &s).unwrap() < 1e-12);
        let table = damped(1.0, 2, 1).inverted_polynomial(3).unwrap();
        assert!(max_relative_deviation(&table, &damped_inverted_polynomial(1.0, 2, 1), &s).unwrap() < 1e-12);
    }

    #[test]
    fn lienard_three_paths_agree() {
        let coeffs = BTreeMap::from([(2, 0.5), (3, -1.0), (4, 0.25)]);
        let s = samples();
        let num = invert_field(polynomial_field(lienard(&coeffs)));
        let closed = lienard_inverted(&coeffs);
        let c2 = coeffs.clone();
        let wf = weak_focus_invert(move |x| c2.iter().map(|(&i, &a)| a * x.x.powi(i as i32)).sum(), |_| 0.0);
        assert!(max_relative_deviation(num.as_ref(), closed.as_ref(), &s).unwrap() < 1e-12);
        assert!(max_relative_deviation(wf.as_ref(), closed.as_ref(), &s).unwrap() < 1e-12);
    }

    #[test]
    fn rx_lemma_closed_form() {
        let r = [[0.0, -1.5], [1.5, 0.0]];
        let p = rx_gamma_g(r, 0.7, |t| t * t);
        let closed = rx_gamma_g_inverted(r, 0.7, |t| t * t);
        let d = max_relative_deviation(invert_field(p).as_ref(), closed.as_ref(), &samples()).unwrap();
        assert!(d < 1e-12, "{d}");
        // with g(t) = t^2 the closed form reads Ru + gamma u / |u|^2
        let u = Point2::new(0.3, -1.1);
        let v = closed.eval(u).unwrap();
        let expect = Point2::new(-1.5 * u.y, 1.5 * u.x) + u * (0.7 / u.norm_sq());
        assert!((v - expect).norm() < 1e-14);
        assert!(is_rotation_like(r, &samples(), 1e-15));
        assert!(!is_rotation_like([[0.0, -1.0], [1.2, 0.0]], &samples(), 1e-12));
    }

    #[test]
    fn spec_json_round_trip() {
        let s: SystemSpec = serde_json::from_str(r#"{"kind":"takens_inverted","l":2,"a":[1.0,-2.0]}"#).unwrap();
        assert_eq!(s, SystemSpec::TakensInverted { l: 2, a: vec![1.0, -2.0] });
        let s: SystemSpec = serde_json::from_str(r#"{"kind":"lienard","coeffs":{"2":0.5,"3":-1.0}}"#).unwrap();
        assert_eq!(s.focus_dim(), Some(4.0 / 3.0));
        assert_eq!(s.inverted().focus_end(), SingularEnd::Infinity);
        let d = SystemSpec::DampedInverted { c: 1.0, alpha: 2, beta: 1 };
        assert!((d.focus_dim().unwrap() - 4.0 / 3.0).abs() < 1e-15);
        assert!(SystemSpec::Damped { c: 1.0, alpha: 1, beta: 1 }.validate().is_err());
    }
}

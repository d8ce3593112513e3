//! Planar vector fields and the inversion operator on them.

use std::fmt;
use std::sync::Arc;

use crate::geometry::Point2;

use super::poly::PolynomialField;
use super::DynamicsError;

/// `(x, y) -> (x', y')`.
pub trait VectorField2D: Send + Sync {
    fn eval(&self, x: Point2) -> Result<Point2, DynamicsError>;

    fn description(&self) -> String;

    /// The coefficient table, when the field is polynomial.
    fn as_polynomial(&self) -> Option<&PolynomialField> {
        None
    }
}

/// Shared handle to a field.
pub type Field = Arc<dyn VectorField2D>;

impl fmt::Debug for dyn VectorField2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VectorField2D({})", self.description())
    }
}

fn checked(x: Point2, v: Point2) -> Result<Point2, DynamicsError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(DynamicsError::Domain { x: x.x, y: x.y })
    }
}

impl VectorField2D for PolynomialField {
    fn eval(&self, x: Point2) -> Result<Point2, DynamicsError> {
        checked(x, PolynomialField::eval(self, x))
    }

    fn description(&self) -> String {
        format!("polynomial field of degree {}", self.degree())
    }

    fn as_polynomial(&self) -> Option<&PolynomialField> {
        Some(self)
    }
}

type Evaluator = dyn Fn(Point2) -> Option<Point2> + Send + Sync;

/// A field given by a closed-form evaluator. `None` marks points outside
/// the domain.
pub struct ClosureField {
    f: Box<Evaluator>,
    description: String,
}

impl VectorField2D for ClosureField {
    fn eval(&self, x: Point2) -> Result<Point2, DynamicsError> {
        match (self.f)(x) {
            Some(v) => checked(x, v),
            None => Err(DynamicsError::Domain { x: x.x, y: x.y }),
        }
    }

    fn description(&self) -> String {
        self.description.clone()
    }
}

pub fn closure_field(
    description: impl Into<String>,
    f: impl Fn(Point2) -> Option<Point2> + Send + Sync + 'static,
) -> Field {
    Arc::new(ClosureField { f: Box::new(f), description: description.into() })
}

pub fn polynomial_field(p: PolynomialField) -> Field {
    Arc::new(p)
}

/// `u -> |u|^2 P~(u) - 2u (u . P~(u))` with `P~(u) = P(u / |u|^2)`.
pub fn invert_field(p: Field) -> Field {
    let description = format!("inversion of [{}]", p.description());
    closure_field(description, move |u| {
        let s = u.norm_sq();
        if s == 0.0 || !s.is_finite() {
            return None;
        }
        let pt = p.eval(u * (1.0 / s)).ok()?;
        Some(pt * s - u * (2.0 * u.dot(pt)))
    })
}

/// `|u|^(2k) F(u)`: same orbits off the origin, polynomial when `F` is the
/// inversion of a polynomial field of degree at most `k`.
pub fn polynomialize(f: Field, k: u32) -> Field {
    let description = format!("|u|^{} times [{}]", 2 * k, f.description());
    closure_field(description, move |u| {
        let v = f.eval(u).ok()?;
        Some(v * u.norm_sq().powi(k as i32))
    })
}

/// Exact counterpart of [`polynomialize`] on a coefficient table.
pub fn polynomialize_table(p: &PolynomialField, k: u32) -> Result<PolynomialField, DynamicsError> {
    p.inverted_polynomial(k)
        .ok_or(DynamicsError::InvalidParameter("k must be at least the field degree"))
}

type Scalar = dyn Fn(Point2) -> f64 + Send + Sync;

/// Inversion of `x' = -y + p(x, y), y' = x + q(x, y)` written through the
/// pulled-back perturbations `p~, q~`:
/// `u' = -v + (v^2 - u^2) p~ - 2uv q~`, `v' = u + (u^2 - v^2) q~ - 2uv p~`.
pub fn weak_focus_invert(
    p: impl Fn(Point2) -> f64 + Send + Sync + 'static,
    q: impl Fn(Point2) -> f64 + Send + Sync + 'static,
) -> Field {
    let p: Box<Scalar> = Box::new(p);
    let q: Box<Scalar> = Box::new(q);
    closure_field("weak focus inversion", move |w| {
        let s = w.norm_sq();
        if s == 0.0 || !s.is_finite() {
            return None;
        }
        let x = w * (1.0 / s);
        let (pt, qt) = (p(x), q(x));
        let (u, v) = (w.x, w.y);
        Some(Point2::new(
            -v + (v * v - u * u) * pt - 2.0 * u * v * qt,
            u + (u * u - v * v) * qt - 2.0 * u * v * pt,
        ))
    })
}

/// `sum c_i F_i`.
pub fn linear_combination(terms: Vec<(f64, Field)>) -> Field {
    let description = terms
        .iter()
        .map(|(c, f)| format!("{c} [{}]", f.description()))
        .collect::<Vec<_>>()
        .join(" + ");
    closure_field(description, move |x| {
        let mut acc = Point2::ORIGIN;
        for (c, f) in &terms {
            acc = acc + f.eval(x).ok()? * *c;
        }
        Some(acc)
    })
}

/// Largest relative pointwise deviation `|G(x) - F(x)| / max(|F(x)|, |G(x)|)`.
pub fn max_relative_deviation(f: &dyn VectorField2D, g: &dyn VectorField2D, samples: &[Point2]) -> Result<f64, DynamicsError> {
    let mut worst: f64 = 0.0;
    for &x in samples {
        let a = f.eval(x)?;
        let b = g.eval(x)?;
        let scale = a.norm().max(b.norm());
        if scale > 0.0 {
            worst = worst.max((a - b).norm() / scale);
        }
    }
    Ok(worst)
}

/// `max |P**(x) - P(x)| / |P(x)|` over the samples.
pub fn involution_deviation(p: Field, samples: &[Point2]) -> Result<f64, DynamicsError> {
    let pp = invert_field(invert_field(p.clone()));
    max_relative_deviation(p.as_ref(), pp.as_ref(), samples)
}

/// `true` when `F(x)` and `G(x)` point the same way at every sample, up to
/// `tol` in the sine and cosine of the angle between them.
pub fn positively_parallel(f: &dyn VectorField2D, g: &dyn VectorField2D, samples: &[Point2], tol: f64) -> Result<bool, DynamicsError> {
    for &x in samples {
        let a = f.eval(x)?;
        let b = g.eval(x)?;
        let na = a.norm();
        let nb = b.norm();
        if na == 0.0 || nb == 0.0 {
            if na != nb {
                return Ok(false);
            }
            continue;
        }
        let cross = (a.x * b.y - a.y * b.x) / (na * nb);
        let cos = a.dot(b) / (na * nb);
        if cross.abs() > tol || cos < 1.0 - tol {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::poly::Poly2;

    fn samples() -> Vec<Point2> {
        (0..50)
            .map(|i| {
                let t = i as f64;
                Point2::from_polar(0.1 + 0.2 * t, 0.7 * t + 0.3)
            })
            .collect()
    }

    fn linear(a: f64, b: f64, c: f64, d: f64) -> Field {
        polynomial_field(PolynomialField::new(
            Poly2::from_terms([(a, 1, 0), (b, 0, 1)]),
            Poly2::from_terms([(c, 1, 0), (d, 0, 1)]),
        ))
    }

    #[test]
    fn antisymmetric_linear_field_is_fixed() {
        let r = linear(0.0, -2.5, 2.5, 0.0);
        let rs = invert_field(r.clone());
        assert!(max_relative_deviation(r.as_ref(), rs.as_ref(), &samples()).unwrap() < 1e-14);
    }

    #[test]
    fn scaling_field_changes_sign() {
        let c = 1.7;
        let f = linear(c, 0.0, 0.0, c);
        let fs = invert_field(f);
        let minus = linear(-c, 0.0, 0.0, -c);
        assert!(max_relative_deviation(fs.as_ref(), minus.as_ref(), &samples()).unwrap() < 1e-14);
    }

    #[test]
    fn origin_is_outside_the_domain() {
        let f = invert_field(linear(1.0, 0.0, 0.0, 1.0));
        assert!(matches!(f.eval(Point2::ORIGIN), Err(DynamicsError::Domain { .. })));
    }

    #[test]
    fn table_and_numeric_polynomialization_agree() {
        let p = PolynomialField::new(
            Poly2::from_terms([(-1.0, 0, 1), (0.5, 2, 0), (-1.0, 3, 0)]),
            Poly2::x(),
        );
        let table = polynomialize_table(&p, 3).unwrap();
        let numeric = polynomialize(invert_field(polynomial_field(p)), 3);
        let d = max_relative_deviation(&table, numeric.as_ref(), &samples()).unwrap();
        assert!(d < 1e-10, "{d}");
    }

    #[test]
    fn weak_focus_with_zero_perturbation_is_rotation() {
        let f = weak_focus_invert(|_| 0.0, |_| 0.0);
        let rot = linear(0.0, -1.0, 1.0, 0.0);
        assert!(max_relative_deviation(f.as_ref(), rot.as_ref(), &samples()).unwrap() < 1e-15);
    }

    #[test]
    fn parallel_check_detects_sign() {
        let f = linear(0.0, -1.0, 1.0, 0.0);
        let g = polynomialize(f.clone(), 2);
        let h = linear(0.0, 1.0, -1.0, 0.0);
        assert!(positively_parallel(f.as_ref(), g.as_ref(), &samples(), 1e-12).unwrap());
        assert!(!positively_parallel(f.as_ref(), h.as_ref(), &samples(), 1e-12).unwrap());
    }
}

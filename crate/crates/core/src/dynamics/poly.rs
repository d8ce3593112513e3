//! Sparse bivariate polynomials and polynomial vector fields.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::geometry::Point2;

/// `sum c_ij x^i y^j`, keyed by `(i, j)`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), f64>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: f64) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: f64, i: u32, j: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(c, i, j);
        p
    }

    pub fn x() -> Self {
        Self::monomial(1.0, 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(1.0, 0, 1)
    }

    /// `x^2 + y^2`.
    pub fn norm_sq() -> Self {
        Self::from_terms([(1.0, 2, 0), (1.0, 0, 2)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (f64, u32, u32)>) -> Self {
        let mut p = Self::zero();
        for (c, i, j) in terms {
            p.add_term(c, i, j);
        }
        p
    }

    pub fn add_term(&mut self, c: f64, i: u32, j: u32) {
        if c == 0.0 {
            return;
        }
        let e = self.terms.entry((i, j)).or_insert(0.0);
        *e += c;
        if *e == 0.0 {
            self.terms.remove(&(i, j));
        }
    }

    pub fn coefficient(&self, i: u32, j: u32) -> f64 {
        self.terms.get(&(i, j)).copied().unwrap_or(0.0)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), f64)> + '_ {
        self.terms.iter().map(|(k, v)| (*k, *v))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|(i, j)| i + j).max().unwrap_or(0)
    }

    pub fn eval(&self, p: Point2) -> f64 {
        self.terms
            .iter()
            .map(|(&(i, j), &c)| c * p.x.powi(i as i32) * p.y.powi(j as i32))
            .sum()
    }

    pub fn scale(&self, k: f64) -> Poly2 {
        Poly2::from_terms(self.terms().map(|((i, j), c)| (k * c, i, j)))
    }

    pub fn add(&self, other: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for ((i, j), c) in other.terms() {
            out.add_term(c, i, j);
        }
        out
    }

    pub fn sub(&self, other: &Poly2) -> Poly2 {
        self.add(&other.scale(-1.0))
    }

    pub fn mul(&self, other: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for ((i, j), a) in self.terms() {
            for ((k, l), b) in other.terms() {
                out.add_term(a * b, i + k, j + l);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Poly2 {
        let mut out = Poly2::constant(1.0);
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Largest absolute coefficient difference.
    pub fn max_difference(&self, other: &Poly2) -> f64 {
        self.sub(other).terms().map(|(_, c)| c.abs()).fold(0.0, f64::max)
    }
}

/// `(x', y') = (p(x, y), q(x, y))`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PolynomialField {
    pub p: Poly2,
    pub q: Poly2,
}

impl PolynomialField {
    pub fn new(p: Poly2, q: Poly2) -> Self {
        PolynomialField { p, q }
    }

    pub fn degree(&self) -> u32 {
        self.p.degree().max(self.q.degree())
    }

    pub fn eval(&self, x: Point2) -> Point2 {
        Point2::new(self.p.eval(x), self.q.eval(x))
    }

    pub fn add(&self, other: &PolynomialField) -> PolynomialField {
        PolynomialField::new(self.p.add(&other.p), self.q.add(&other.q))
    }

    pub fn scale(&self, k: f64) -> PolynomialField {
        PolynomialField::new(self.p.scale(k), self.q.scale(k))
    }

    /// `|u|^(2k) P*(u)` as a polynomial field, for `k >= degree`.
    ///
    /// A monomial `x^i y^j` of degree `n` pulls back to `u^i v^j / s^n`
    /// with `s = u^2 + v^2`. A term `c m` in the first component then
    /// contributes `c m (v^2 - u^2, -2uv)` to `P*` and a term in the
    /// second component contributes `c m (-2uv, u^2 - v^2)`.
    pub fn inverted_polynomial(&self, k: u32) -> Option<PolynomialField> {
        if k < self.degree() {
            return None;
        }
        let s = Poly2::norm_sq();
        let vv_uu = Poly2::from_terms([(1.0, 0, 2), (-1.0, 2, 0)]);
        let uu_vv = vv_uu.scale(-1.0);
        let m2uv = Poly2::monomial(-2.0, 1, 1);
        let mut p = Poly2::zero();
        let mut q = Poly2::zero();
        for ((i, j), c) in self.p.terms() {
            let m = Poly2::monomial(c, i, j).mul(&s.pow(k - i - j));
            p = p.add(&m.mul(&vv_uu));
            q = q.add(&m.mul(&m2uv));
        }
        for ((i, j), c) in self.q.terms() {
            let m = Poly2::monomial(c, i, j).mul(&s.pow(k - i - j));
            p = p.add(&m.mul(&m2uv));
            q = q.add(&m.mul(&uu_vv));
        }
        Some(PolynomialField::new(p, q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let s = Poly2::norm_sq();
        let s2 = s.pow(2);
        assert_eq!(s2.coefficient(4, 0), 1.0);
        assert_eq!(s2.coefficient(2, 2), 2.0);
        assert_eq!(s2.coefficient(0, 4), 1.0);
        assert_eq!(s2.degree(), 4);
        assert!(s.sub(&s).is_zero());
        assert_eq!(s.eval(Point2::new(3.0, 4.0)), 25.0);
    }

    #[test]
    fn rotation_inverts_to_itself() {
        let rot = PolynomialField::new(Poly2::y().scale(-1.0), Poly2::x());
        let inv = rot.inverted_polynomial(1).unwrap();
        // |u|^2 (-v, u)
        let expect = PolynomialField::new(
            Poly2::from_terms([(-1.0, 2, 1), (-1.0, 0, 3)]),
            Poly2::from_terms([(1.0, 3, 0), (1.0, 1, 2)]),
        );
        assert!(inv.p.max_difference(&expect.p) < 1e-15);
        assert!(inv.q.max_difference(&expect.q) < 1e-15);
        assert!(rot.inverted_polynomial(0).is_none());
    }
}

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::GeometryError;

/// A point (or vector) in the plane.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn from_polar(r: f64, phi: f64) -> Self {
        let (s, c) = phi.sin_cos();
        Point2::new(r * c, r * s)
    }

    pub fn norm_sq(self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dot(self, other: Point2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn distance(self, other: Point2) -> f64 {
        (self - other).norm()
    }

    /// Polar angle in `(-pi, pi]`.
    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, rhs: Point2) -> Point2 {
        Point2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, rhs: Point2) -> Point2 {
        Point2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, k: f64) -> Point2 {
        Point2::new(self.x * k, self.y * k)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

/// A point in space.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Point3 { x, y, z }
    }

    /// Builds a point from cylindrical coordinates `(radius, angle, height)`.
    pub fn from_cylindrical(radius: f64, phi: f64, z: f64) -> Self {
        let (s, c) = phi.sin_cos();
        Point3::new(radius * c, radius * s, z)
    }

    pub fn norm_sq(self) -> f64 {
        self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn distance(self, other: Point3) -> f64 {
        (self - other).norm()
    }

    pub fn horizontal(self) -> Point2 {
        Point2::new(self.x, self.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl Sub for Point3 {
    type Output = Point3;
    fn sub(self, rhs: Point3) -> Point3 {
        Point3::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Mul<f64> for Point3 {
    type Output = Point3;
    fn mul(self, k: f64) -> Point3 {
        Point3::new(self.x * k, self.y * k, self.z * k)
    }
}

/// A planar point in polar form. The angle is unwrapped: it is a real
/// number, never reduced modulo `2*pi`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Polar {
    pub r: f64,
    pub phi: f64,
}

impl Polar {
    pub const fn new(r: f64, phi: f64) -> Self {
        Polar { r, phi }
    }

    pub fn to_cartesian(self) -> Point2 {
        Point2::from_polar(self.r, self.phi)
    }
}

/// Geometric inversion `x -> x / |x|^2` with respect to the origin.
pub trait Invert: Sized {
    fn inverted(&self) -> Result<Self, GeometryError>;
}

impl Invert for Point2 {
    fn inverted(&self) -> Result<Self, GeometryError> {
        let n2 = self.norm_sq();
        if n2 == 0.0 || !n2.is_finite() {
            return Err(GeometryError::InversionAtOrigin);
        }
        Ok(*self * n2.recip())
    }
}

impl Invert for Point3 {
    fn inverted(&self) -> Result<Self, GeometryError> {
        let n2 = self.norm_sq();
        if n2 == 0.0 || !n2.is_finite() {
            return Err(GeometryError::InversionAtOrigin);
        }
        Ok(*self * n2.recip())
    }
}

impl Invert for Polar {
    fn inverted(&self) -> Result<Self, GeometryError> {
        if self.r == 0.0 || !self.r.is_finite() {
            return Err(GeometryError::InversionAtOrigin);
        }
        Ok(Polar::new(self.r.recip(), self.phi))
    }
}

/// Inverts `p` in the unit circle centered at `p`-plane point `center`:
/// `x -> (x - w) / |x - w|^2`. The image lives in the plane whose origin
/// corresponds to `center`.
pub fn invert_about(p: Point2, center: Point2) -> Result<Point2, GeometryError> {
    (p - center).inverted()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn inverts_simple_point() {
        let q = Point2::new(2.0, 0.0).inverted().unwrap();
        assert_eq!(q, Point2::new(0.5, 0.0));
    }

    #[test]
    fn inversion_is_involutive() {
        let p = Point2::new(0.3, -1.7);
        let back = p.inverted().unwrap().inverted().unwrap();
        assert_relative_eq!(back.x, p.x, max_relative = 1e-12);
        assert_relative_eq!(back.y, p.y, max_relative = 1e-12);
    }

    #[test]
    fn distance_identity_on_axes() {
        let a = Point2::new(1.0, 0.0);
        let b = Point2::new(0.0, 2.0);
        let d = a.inverted().unwrap().distance(b.inverted().unwrap());
        assert_relative_eq!(d, 5f64.sqrt() / 2.0, max_relative = 1e-15);
        assert_relative_eq!(d, a.distance(b) / (a.norm() * b.norm()), max_relative = 1e-15);
    }

    #[test]
    fn origin_is_a_domain_error() {
        assert!(matches!(
            Point2::ORIGIN.inverted(),
            Err(GeometryError::InversionAtOrigin)
        ));
        assert!(Point3::new(0.0, 0.0, 0.0).inverted().is_err());
        assert!(Polar::new(0.0, 1.0).inverted().is_err());
    }

    #[test]
    fn inverts_in_space() {
        let p = Point3::new(0.0, 3.0, 4.0).inverted().unwrap();
        assert_relative_eq!(p.norm(), 0.2, max_relative = 1e-15);
    }
}

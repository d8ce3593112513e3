//! Projections of the plane onto spheres in space, and back.

use serde::{Deserialize, Serialize};

use super::point::Invert;
use super::{GeometryError, Point2, Point3, SampledCurve, Vertices};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SphereKind {
    /// Radius `R`, centered at `(0, 0, R)`: tangent to the plane at the origin.
    Riemann { radius: f64 },
    /// Radius `R`, centered at the origin.
    Poincare { radius: f64 },
}

impl SphereKind {
    pub fn radius(self) -> f64 {
        match self {
            SphereKind::Riemann { radius } | SphereKind::Poincare { radius } => radius,
        }
    }

    pub fn center(self) -> Point3 {
        match self {
            SphereKind::Riemann { radius } => Point3::new(0.0, 0.0, radius),
            SphereKind::Poincare { .. } => Point3::new(0.0, 0.0, 0.0),
        }
    }

    /// Relative deviation of `p` from the sphere.
    pub fn defect(self, p: Point3) -> f64 {
        let r = self.radius();
        (p.distance(self.center()) - r).abs() / r
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpherePoint {
    position: Point3,
    kind: SphereKind,
}

impl SpherePoint {
    const TOLERANCE: f64 = 1e-12;

    pub fn new(position: Point3, kind: SphereKind) -> Result<Self, GeometryError> {
        if !(kind.radius() > 0.0) || !kind.radius().is_finite() {
            return Err(GeometryError::InvalidParameter("sphere radius must be positive"));
        }
        let defect = kind.defect(position);
        if !(defect <= Self::TOLERANCE) {
            return Err(GeometryError::OffSphere(defect));
        }
        Ok(SpherePoint { position, kind })
    }

    pub fn position(&self) -> Point3 {
        self.position
    }

    pub fn kind(&self) -> SphereKind {
        self.kind
    }
}

fn check_radius(radius: f64) -> Result<(), GeometryError> {
    if radius > 0.0 && radius.is_finite() {
        Ok(())
    } else {
        Err(GeometryError::InvalidParameter("sphere radius must be positive"))
    }
}

/// Stereographic projection of the plane onto the Riemann sphere of radius
/// `radius` resting on the origin. Lines through the north pole `(0,0,2R)`:
/// the origin goes to the south pole and points far away approach the north pole.
///
/// In polar form the horizontal radius is `4R^2 r / (r^2 + 4R^2)`.
pub fn riemann_project(p: Point2, radius: f64) -> Result<SpherePoint, GeometryError> {
    check_radius(radius)?;
    if !p.is_finite() {
        return Err(GeometryError::NonFinite(0));
    }
    let four_r2 = 4.0 * radius * radius;
    let r2 = p.norm_sq();
    let denom = r2 + four_r2;
    let h = p * (four_r2 / denom);
    // 2R r^2/(r^2+4R^2), written to stay accurate when r is tiny.
    let z = 2.0 * radius * (r2 / denom);
    let z = if z > 2.0 * radius { 2.0 * radius } else { z };
    SpherePoint::new(Point3::new(h.x, h.y, z), SphereKind::Riemann { radius })
}

/// Horizontal radius of the Riemann-sphere image of `1/r`, i.e. the radial
/// profile of projection composed with inversion: `4R^2 r / (4R^2 r^2 + 1)`.
/// For `R = 1/2` this is `r / (r^2 + 1)`.
pub fn riemann_radial_map(r: f64, radius: f64) -> f64 {
    let four_r2 = 4.0 * radius * radius;
    four_r2 * r / (four_r2 * r * r + 1.0)
}

/// Inversion followed by stereographic projection; the origin maps to the north pole.
pub fn riemann_project_inverted(p: Point2, radius: f64) -> Result<SpherePoint, GeometryError> {
    check_radius(radius)?;
    if p.norm_sq() == 0.0 {
        return SpherePoint::new(Point3::new(0.0, 0.0, 2.0 * radius), SphereKind::Riemann { radius });
    }
    // Written directly in terms of p to stay accurate near the pole.
    let four_r2 = 4.0 * radius * radius;
    let r2 = p.norm_sq();
    let denom = 1.0 + four_r2 * r2;
    let h = p * (four_r2 / denom);
    let z = 2.0 * radius / denom;
    SpherePoint::new(Point3::new(h.x, h.y, z), SphereKind::Riemann { radius })
}

/// Image of a focus-spiral point on the Poincare sphere of radius `radius`,
/// after inversion. With `f = |p|` and `phi` the angle of `p`, the image
/// in cylindrical coordinates is
/// `(R / sqrt(1 + R^2 f^2), phi, R^2 f / sqrt(1 + R^2 f^2))`.
///
/// This equals central projection (through the sphere center) of the
/// inverted point `p/|p|^2` from the plane tangent at the north pole; see
/// [`poincare_project_plane`]. The origin lands on the equator.
pub fn poincare_project(p: Point2, radius: f64) -> Result<SpherePoint, GeometryError> {
    let f = p.norm();
    let phi = if f == 0.0 { 0.0 } else { p.angle() };
    poincare_project_polar(f, phi, radius)
}

/// [`poincare_project`] for a point given as `(f, phi)` with unwrapped angle.
pub fn poincare_project_polar(f: f64, phi: f64, radius: f64) -> Result<SpherePoint, GeometryError> {
    check_radius(radius)?;
    if !f.is_finite() || !phi.is_finite() {
        return Err(GeometryError::NonFinite(0));
    }
    let rf = radius * f;
    let s = (1.0 + rf * rf).sqrt();
    SpherePoint::new(
        Point3::from_cylindrical(radius / s, phi, radius * rf / s),
        SphereKind::Poincare { radius },
    )
}

/// Central projection of a point of the plane tangent at the north pole
/// `(0, 0, R)` onto the Poincare sphere (upper hemisphere). The origin maps
/// to the north pole and far points approach the equator.
pub fn poincare_project_plane(q: Point2, radius: f64) -> Result<SpherePoint, GeometryError> {
    check_radius(radius)?;
    let rho = q.norm();
    let s = rho.hypot(radius);
    let h = q * (radius / s);
    SpherePoint::new(Point3::new(h.x, h.y, radius * radius / s), SphereKind::Poincare { radius })
}

/// Orthogonal projection of a sphere point onto the `xy`-plane.
pub fn disc_project(s: &SpherePoint) -> Point2 {
    s.position().horizontal()
}

/// Which projection to apply along a curve.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CurveProjection {
    /// [`riemann_project`].
    Riemann(f64),
    /// [`riemann_project_inverted`].
    RiemannInverted(f64),
    /// [`poincare_project`].
    Poincare(f64),
}

/// Projects every vertex of a planar curve; returns a curve in space.
pub fn project_curve(c: &SampledCurve, projection: CurveProjection) -> Result<SampledCurve, GeometryError> {
    let pts: Vec<Point3> = match (c.vertices(), projection) {
        // Keep the unwrapped angle for polar input.
        (Vertices::Polar2(v), CurveProjection::Poincare(r)) => v
            .iter()
            .map(|p| poincare_project_polar(p.r, p.phi, r).map(|s| s.position()))
            .collect::<Result<_, _>>()?,
        _ => {
            let planar = c.planar_points()?;
            planar
                .into_iter()
                .map(|p| {
                    match projection {
                        CurveProjection::Riemann(r) => riemann_project(p, r),
                        CurveProjection::RiemannInverted(r) => riemann_project_inverted(p, r),
                        CurveProjection::Poincare(r) => poincare_project(p, r),
                    }
                    .map(|s| s.position())
                })
                .collect::<Result<_, _>>()?
        }
    };
    let label = match projection {
        CurveProjection::Riemann(r) => format!("riemann(R={r}; {})", c.source),
        CurveProjection::RiemannInverted(r) => format!("riemann_inverted(R={r}; {})", c.source),
        CurveProjection::Poincare(r) => format!("poincare(R={r}; {})", c.source),
    };
    Ok(SampledCurve::spatial(pts, label)?.closed(c.closed))
}

/// Orthogonal projection of a space curve onto the `xy`-plane. When the
/// curve came from a polar curve through [`project_curve`] the angle can be
/// supplied to keep the result in polar form.
pub fn disc_project_curve(c: &SampledCurve) -> Result<SampledCurve, GeometryError> {
    let pts: Vec<Point2> = c.spatial_points().into_iter().map(|p| p.horizontal()).collect();
    Ok(SampledCurve::cartesian(pts, format!("disc({})", c.source))?.closed(c.closed))
}

/// Poincare-disc image of a polar focus spiral: radius `R/sqrt(1 + R^2 f^2)`
/// at the same unwrapped angle. Stays in polar form.
pub fn poincare_disc_curve(c: &SampledCurve, radius: f64) -> Result<SampledCurve, GeometryError> {
    check_radius(radius)?;
    let Some(v) = c.polar_points() else {
        let proj = project_curve(c, CurveProjection::Poincare(radius))?;
        return disc_project_curve(&proj);
    };
    let pts = v
        .iter()
        .map(|p| {
            let rf = radius * p.r;
            super::Polar::new(radius / (1.0 + rf * rf).sqrt(), p.phi)
        })
        .collect();
    Ok(SampledCurve::polar(pts, format!("poincare_disc(R={radius}; {})", c.source))?.closed(c.closed))
}

/// Central projection from the tangent plane, written as [`poincare_project`] of the inverse.
pub fn poincare_project_plane_via_inverse(q: Point2, radius: f64) -> Result<SpherePoint, GeometryError> {
    if q.norm_sq() == 0.0 {
        return poincare_project_plane(q, radius);
    }
    poincare_project(q.inverted()?, radius)
}

//! Solid planar regions used to stand in for the part of a curve that is
//! too dense to sample (the nucleus of a spiral, or everything beyond a
//! truncation radius of an unbounded curve).

use serde::{Deserialize, Serialize};

use super::{GeometryError, Point2};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Region {
    /// Closed disc.
    Disc { center: Point2, radius: f64 },
    /// Everything at distance `>= radius` from `center`. Unbounded.
    Exterior { center: Point2, radius: f64 },
    /// `inner <= |x - center| <= outer` with `0 < inner < outer`.
    Annulus { center: Point2, inner: f64, outer: f64 },
}

impl Region {
    pub fn disc(center: Point2, radius: f64) -> Self {
        Region::Disc { center, radius }
    }

    /// Annulus between two radii; collapses to a disc when `inner <= 0`
    /// and to an exterior when `outer` is infinite.
    pub fn annulus(center: Point2, inner: f64, outer: f64) -> Self {
        if inner <= 0.0 {
            Region::Disc { center, radius: outer }
        } else if outer.is_infinite() {
            Region::Exterior { center, radius: inner }
        } else {
            Region::Annulus { center, inner, outer }
        }
    }

    pub fn center(&self) -> Point2 {
        match *self {
            Region::Disc { center, .. }
            | Region::Exterior { center, .. }
            | Region::Annulus { center, .. } => center,
        }
    }

    /// `(inner, outer)` radii; a disc has inner radius 0 and an exterior
    /// has infinite outer radius.
    pub fn radii(&self) -> (f64, f64) {
        match *self {
            Region::Disc { radius, .. } => (0.0, radius),
            Region::Exterior { radius, .. } => (radius, f64::INFINITY),
            Region::Annulus { inner, outer, .. } => (inner, outer),
        }
    }

    pub fn is_bounded(&self) -> bool {
        !matches!(self, Region::Exterior { .. })
    }

    pub fn contains(&self, p: Point2) -> bool {
        let d = p.distance(self.center());
        let (lo, hi) = self.radii();
        d >= lo && d <= hi
    }

    /// Distance from `p` to the closest point of the region.
    pub fn distance_to(&self, p: Point2) -> f64 {
        let d = p.distance(self.center());
        let (lo, hi) = self.radii();
        if d < lo {
            lo - d
        } else if d > hi {
            d - hi
        } else {
            0.0
        }
    }

    pub fn area(&self) -> f64 {
        let (lo, hi) = self.radii();
        std::f64::consts::PI * (hi * hi - lo * lo)
    }

    /// Image under `x -> (x - w)/|x - w|^2`.
    ///
    /// Discs and exteriors map to discs or exteriors (circles not through
    /// `w` map to circles). An annulus is only supported when it is
    /// concentric with `w`.
    pub fn inverted_about(&self, w: Point2) -> Result<Region, GeometryError> {
        let c = self.center() - w;
        match *self {
            Region::Annulus { inner, outer, .. } => {
                if c.norm() > 1e-12 * outer {
                    return Err(GeometryError::Unsupported(
                        "inversion of an annulus about a point other than its center",
                    ));
                }
                Ok(Region::annulus(Point2::ORIGIN, outer.recip(), inner.recip()))
            }
            Region::Disc { radius, .. } | Region::Exterior { radius, .. } => {
                let denom = c.norm_sq() - radius * radius;
                if denom.abs() <= 1e-14 * radius * radius {
                    return Err(GeometryError::Unsupported(
                        "inversion of a circle through the inversion center",
                    ));
                }
                if c.norm_sq() == 0.0 {
                    // Concentric: radii swap.
                    return Ok(match self {
                        Region::Disc { .. } => Region::Exterior {
                            center: Point2::ORIGIN,
                            radius: radius.recip(),
                        },
                        _ => Region::Disc {
                            center: Point2::ORIGIN,
                            radius: radius.recip(),
                        },
                    });
                }
                let center = c * denom.recip();
                let r = radius / denom.abs();
                let w_inside_circle = denom < 0.0;
                let is_disc = matches!(self, Region::Disc { .. });
                // The side of the circle containing w maps to the unbounded side.
                Ok(if is_disc != w_inside_circle {
                    Region::Disc { center, radius: r }
                } else {
                    Region::Exterior { center, radius: r }
                })
            }
        }
    }

    pub fn inverted(&self) -> Result<Region, GeometryError> {
        self.inverted_about(Point2::ORIGIN)
    }
}

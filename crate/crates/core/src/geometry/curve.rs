use serde::{Deserialize, Serialize};

use super::point::{invert_about, Invert};
use super::{GeometryError, Point2, Point3, Polar, Region};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoordSystem {
    Cartesian2,
    Polar2,
    Cartesian3,
}

impl CoordSystem {
    pub fn as_str(self) -> &'static str {
        match self {
            CoordSystem::Cartesian2 => "cartesian2",
            CoordSystem::Polar2 => "polar2",
            CoordSystem::Cartesian3 => "cartesian3",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.trim() {
            "cartesian2" => Some(CoordSystem::Cartesian2),
            "polar2" => Some(CoordSystem::Polar2),
            "cartesian3" => Some(CoordSystem::Cartesian3),
            _ => None,
        }
    }
}

/// Vertex storage in the curve's native coordinate system.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Vertices {
    Cartesian2(Vec<Point2>),
    Polar2(Vec<Polar>),
    Cartesian3(Vec<Point3>),
}

impl Vertices {
    pub fn len(&self) -> usize {
        match self {
            Vertices::Cartesian2(v) => v.len(),
            Vertices::Polar2(v) => v.len(),
            Vertices::Cartesian3(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// An ordered polyline in 2D or 3D.
///
/// `tail` optionally records a solid region that contains the part of the
/// underlying curve that was cut off (see
/// [`truncate_at_nucleus`](crate::geometry::truncate_at_nucleus)).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampledCurve {
    vertices: Vertices,
    pub closed: bool,
    pub source: String,
    pub tail: Option<Region>,
}

impl SampledCurve {
    pub fn new(vertices: Vertices, source: impl Into<String>) -> Result<Self, GeometryError> {
        validate(&vertices)?;
        Ok(SampledCurve {
            vertices,
            closed: false,
            source: source.into(),
            tail: None,
        })
    }

    pub fn cartesian(points: Vec<Point2>, source: impl Into<String>) -> Result<Self, GeometryError> {
        Self::new(Vertices::Cartesian2(points), source)
    }

    pub fn polar(points: Vec<Polar>, source: impl Into<String>) -> Result<Self, GeometryError> {
        Self::new(Vertices::Polar2(points), source)
    }

    pub fn spatial(points: Vec<Point3>, source: impl Into<String>) -> Result<Self, GeometryError> {
        Self::new(Vertices::Cartesian3(points), source)
    }

    pub fn closed(mut self, closed: bool) -> Self {
        self.closed = closed;
        self
    }

    pub fn with_tail(mut self, tail: Option<Region>) -> Self {
        self.tail = tail;
        self
    }

    pub fn vertices(&self) -> &Vertices {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vertices {
        self.vertices
    }

    pub fn coord_system(&self) -> CoordSystem {
        match self.vertices {
            Vertices::Cartesian2(_) => CoordSystem::Cartesian2,
            Vertices::Polar2(_) => CoordSystem::Polar2,
            Vertices::Cartesian3(_) => CoordSystem::Cartesian3,
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_planar(&self) -> bool {
        !matches!(self.vertices, Vertices::Cartesian3(_))
    }

    pub fn polar_points(&self) -> Option<&[Polar]> {
        match &self.vertices {
            Vertices::Polar2(v) => Some(v),
            _ => None,
        }
    }

    /// Planar vertices in Cartesian form.
    pub fn planar_points(&self) -> Result<Vec<Point2>, GeometryError> {
        match &self.vertices {
            Vertices::Cartesian2(v) => Ok(v.clone()),
            Vertices::Polar2(v) => Ok(v.iter().map(|p| p.to_cartesian()).collect()),
            Vertices::Cartesian3(_) => Err(GeometryError::NotPlanar),
        }
    }

    /// Vertices as points in space (planar curves get `z = 0`).
    pub fn spatial_points(&self) -> Vec<Point3> {
        match &self.vertices {
            Vertices::Cartesian3(v) => v.clone(),
            Vertices::Cartesian2(v) => v.iter().map(|p| Point3::new(p.x, p.y, 0.0)).collect(),
            Vertices::Polar2(v) => v
                .iter()
                .map(|p| {
                    let c = p.to_cartesian();
                    Point3::new(c.x, c.y, 0.0)
                })
                .collect(),
        }
    }

    /// Converts a polar curve to Cartesian storage; other curves are returned unchanged.
    pub fn to_cartesian(&self) -> SampledCurve {
        match &self.vertices {
            Vertices::Polar2(v) => SampledCurve {
                vertices: Vertices::Cartesian2(v.iter().map(|p| p.to_cartesian()).collect()),
                closed: self.closed,
                source: self.source.clone(),
                tail: self.tail,
            },
            _ => self.clone(),
        }
    }

    /// Length of the polyline (closing segment included for closed curves).
    pub fn length(&self) -> f64 {
        let pts = self.spatial_points();
        let mut total: f64 = pts.windows(2).map(|w| w[0].distance(w[1])).sum();
        if self.closed && pts.len() > 2 {
            total += pts[pts.len() - 1].distance(pts[0]);
        }
        total
    }

    /// Largest distance between consecutive vertices.
    pub fn max_gap(&self) -> f64 {
        self.spatial_points()
            .windows(2)
            .map(|w| w[0].distance(w[1]))
            .fold(0.0, f64::max)
    }

    /// Smallest distance from a vertex to the origin.
    pub fn min_radius(&self) -> f64 {
        match &self.vertices {
            Vertices::Polar2(v) => v.iter().map(|p| p.r).fold(f64::INFINITY, f64::min),
            _ => self
                .spatial_points()
                .iter()
                .map(|p| p.norm())
                .fold(f64::INFINITY, f64::min),
        }
    }

    /// Pointwise geometric inversion. Polar curves invert in closed form
    /// (`r -> 1/r`, angle unchanged).
    pub fn inverted(&self) -> Result<SampledCurve, GeometryError> {
        let vertices = match &self.vertices {
            Vertices::Polar2(v) => {
                Vertices::Polar2(v.iter().map(|p| p.inverted()).collect::<Result<_, _>>()?)
            }
            Vertices::Cartesian2(v) => {
                Vertices::Cartesian2(v.iter().map(|p| p.inverted()).collect::<Result<_, _>>()?)
            }
            Vertices::Cartesian3(v) => {
                Vertices::Cartesian3(v.iter().map(|p| p.inverted()).collect::<Result<_, _>>()?)
            }
        };
        let tail = self.tail.map(|t| t.inverted()).transpose()?;
        Ok(SampledCurve {
            vertices,
            closed: self.closed,
            source: format!("inverted({})", self.source),
            tail,
        })
    }

    /// Inversion about `center`: `x -> (x - w)/|x - w|^2`. The result is Cartesian.
    pub fn inverted_about(&self, center: Point2) -> Result<SampledCurve, GeometryError> {
        let pts = self
            .planar_points()?
            .into_iter()
            .map(|p| invert_about(p, center))
            .collect::<Result<Vec<_>, _>>()?;
        let tail = self.tail.map(|t| t.inverted_about(center)).transpose()?;
        Ok(SampledCurve {
            vertices: Vertices::Cartesian2(pts),
            closed: self.closed,
            source: format!("inverted_about({}, {}; {})", center.x, center.y, self.source),
            tail,
        })
    }

    /// Applies `f` to every planar vertex, producing a Cartesian curve.
    pub fn map_planar(
        &self,
        f: impl Fn(Point2) -> Point2,
        source: impl Into<String>,
    ) -> Result<SampledCurve, GeometryError> {
        let pts: Vec<Point2> = self.planar_points()?.into_iter().map(f).collect();
        let mut c = SampledCurve::cartesian(pts, source)?;
        c.closed = self.closed;
        Ok(c)
    }

    /// Drops vertices before index `start` and after index `end` (inclusive range).
    pub fn slice(&self, start: usize, end: usize) -> Result<SampledCurve, GeometryError> {
        let vertices = match &self.vertices {
            Vertices::Cartesian2(v) => Vertices::Cartesian2(v[start..=end].to_vec()),
            Vertices::Polar2(v) => Vertices::Polar2(v[start..=end].to_vec()),
            Vertices::Cartesian3(v) => Vertices::Cartesian3(v[start..=end].to_vec()),
        };
        SampledCurve::new(vertices, self.source.clone())
    }

    /// Inserts vertices so that consecutive vertices are at most `max_gap`
    /// apart. Polar curves are refined by interpolating `(r, phi)` linearly,
    /// which follows the spiral far better than straight chords.
    pub fn resampled(&self, max_gap: f64) -> Result<SampledCurve, GeometryError> {
        if !(max_gap > 0.0) {
            return Err(GeometryError::InvalidParameter("max_gap must be positive"));
        }
        let vertices = match &self.vertices {
            Vertices::Polar2(v) => {
                let mut out = Vec::with_capacity(v.len());
                for w in v.windows(2) {
                    let (a, b) = (w[0], w[1]);
                    let arc = (b.r - a.r).hypot((b.phi - a.phi).abs() * a.r.max(b.r));
                    let n = (arc / max_gap).ceil().max(1.0) as usize;
                    for k in 0..n {
                        let t = k as f64 / n as f64;
                        out.push(Polar::new(a.r + t * (b.r - a.r), a.phi + t * (b.phi - a.phi)));
                    }
                }
                out.push(*v.last().unwrap());
                Vertices::Polar2(out)
            }
            Vertices::Cartesian2(v) => {
                let mut out = Vec::with_capacity(v.len());
                for w in v.windows(2) {
                    let n = (w[0].distance(w[1]) / max_gap).ceil().max(1.0) as usize;
                    for k in 0..n {
                        let t = k as f64 / n as f64;
                        out.push(w[0] + (w[1] - w[0]) * t);
                    }
                }
                out.push(*v.last().unwrap());
                Vertices::Cartesian2(out)
            }
            Vertices::Cartesian3(v) => {
                let mut out = Vec::with_capacity(v.len());
                for w in v.windows(2) {
                    let n = (w[0].distance(w[1]) / max_gap).ceil().max(1.0) as usize;
                    for k in 0..n {
                        let t = k as f64 / n as f64;
                        let d = w[1] - w[0];
                        out.push(Point3::new(w[0].x + t * d.x, w[0].y + t * d.y, w[0].z + t * d.z));
                    }
                }
                out.push(*v.last().unwrap());
                Vertices::Cartesian3(out)
            }
        };
        Ok(SampledCurve {
            vertices,
            closed: self.closed,
            source: self.source.clone(),
            tail: self.tail,
        })
    }
}

fn validate(vertices: &Vertices) -> Result<(), GeometryError> {
    if vertices.len() < 2 {
        return Err(GeometryError::TooFewPoints(vertices.len()));
    }
    match vertices {
        Vertices::Cartesian2(v) => {
            for (i, w) in v.windows(2).enumerate() {
                if !w[0].is_finite() || !w[1].is_finite() {
                    return Err(GeometryError::NonFinite(i));
                }
                if w[0] == w[1] {
                    return Err(GeometryError::RepeatedPoint(i + 1));
                }
            }
        }
        Vertices::Cartesian3(v) => {
            for (i, w) in v.windows(2).enumerate() {
                if !w[0].is_finite() || !w[1].is_finite() {
                    return Err(GeometryError::NonFinite(i));
                }
                if w[0] == w[1] {
                    return Err(GeometryError::RepeatedPoint(i + 1));
                }
            }
        }
        Vertices::Polar2(v) => {
            let dir = (v[1].phi - v[0].phi).signum();
            for (i, w) in v.windows(2).enumerate() {
                if !(w[0].r.is_finite() && w[0].phi.is_finite() && w[1].r.is_finite() && w[1].phi.is_finite()) {
                    return Err(GeometryError::NonFinite(i));
                }
                if w[0].r < 0.0 || w[1].r < 0.0 {
                    return Err(GeometryError::NegativeRadius(i));
                }
                if dir == 0.0 || (w[1].phi - w[0].phi) * dir <= 0.0 {
                    return Err(GeometryError::AngleNotMonotone(i + 1));
                }
            }
        }
    }
    Ok(())
}

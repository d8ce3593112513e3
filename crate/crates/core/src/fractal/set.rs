//! Finite descriptions of planar sets: polylines, isolated points, solid
//! regions and radial segments (possibly reaching infinity).

use serde::{Deserialize, Serialize};

use crate::geometry::{invert_about, GeometryError, Point2, Region, SampledCurve};

use super::FractalError;

/// The segment `{t (cos angle, sin angle) : inner <= t <= outer}`.
/// `outer` may be infinite; `inner` may be zero.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadialSpan {
    pub angle: f64,
    pub inner: f64,
    pub outer: f64,
}

impl RadialSpan {
    pub fn new(angle: f64, inner: f64, outer: f64) -> Self {
        RadialSpan { angle, inner, outer }
    }

    pub fn is_bounded(&self) -> bool {
        self.outer.is_finite()
    }

    pub fn endpoints(&self) -> (Point2, Point2) {
        (Point2::from_polar(self.inner, self.angle), Point2::from_polar(self.outer, self.angle))
    }

    /// Image under inversion about the origin: radii `(1/outer, 1/inner)`.
    pub fn inverted(&self) -> Result<RadialSpan, GeometryError> {
        if self.inner == 0.0 {
            return Err(GeometryError::InversionAtOrigin);
        }
        Ok(RadialSpan::new(self.angle, self.outer.recip(), self.inner.recip()))
    }
}

/// Samples along the image of a span under inversion about `w != 0`.
const SPAN_IMAGE_SAMPLES: usize = 1024;

/// The image of a span not containing `w` is an arc of a circle through the
/// origin (a segment when `w` is on the span's line). Sampled uniformly in
/// arc length: with `s` the offset along the line from the foot of `w` and
/// `h` the distance from `w`, the image moves uniformly in `atan(s/h)`.
fn span_image(span: &RadialSpan, w: Point2) -> Result<Vec<Point2>, GeometryError> {
    let dir = Point2::from_polar(1.0, span.angle);
    let foot = dir * w.dot(dir);
    let h = w.distance(foot);
    let t_foot = w.dot(dir);
    let on = |t: f64| Point2::from_polar(t, span.angle);
    if span.inner <= t_foot && t_foot <= span.outer && h == 0.0 {
        return Err(GeometryError::InversionAtOrigin);
    }
    let far = |t: f64| if t.is_finite() { invert_about(on(t), w) } else { Ok(Point2::ORIGIN) };
    if h <= 1e-12 * w.norm() {
        return Ok(vec![far(span.inner)?, far(span.outer)?]);
    }
    let beta = |t: f64| if t.is_finite() { ((t - t_foot) / h).atan() } else { std::f64::consts::FRAC_PI_2 };
    let (b0, b1) = (beta(span.inner), beta(span.outer));
    let mut out = Vec::with_capacity(SPAN_IMAGE_SAMPLES + 1);
    for i in 0..=SPAN_IMAGE_SAMPLES {
        let b = b0 + (b1 - b0) * i as f64 / SPAN_IMAGE_SAMPLES as f64;
        let t = match i {
            0 => span.inner,
            SPAN_IMAGE_SAMPLES => span.outer,
            _ => t_foot + h * b.tan(),
        };
        out.push(far(t)?);
    }
    Ok(out)
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PlanarSet {
    pub polylines: Vec<Vec<Point2>>,
    pub points: Vec<Point2>,
    pub regions: Vec<Region>,
    pub spans: Vec<RadialSpan>,
}

/// Axis-aligned bounding box.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundingBox {
    pub min: Point2,
    pub max: Point2,
}

impl BoundingBox {
    fn empty() -> Self {
        BoundingBox {
            min: Point2::new(f64::INFINITY, f64::INFINITY),
            max: Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
        }
    }

    fn add(&mut self, p: Point2) {
        self.min.x = self.min.x.min(p.x);
        self.min.y = self.min.y.min(p.y);
        self.max.x = self.max.x.max(p.x);
        self.max.y = self.max.y.max(p.y);
    }

    pub fn diameter(&self) -> f64 {
        self.max.distance(self.min)
    }
}

impl PlanarSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// A planar curve together with its tail region, if any.
    pub fn from_curve(c: &SampledCurve) -> Result<Self, GeometryError> {
        let mut set = PlanarSet::default();
        set.push_curve(c)?;
        Ok(set)
    }

    pub fn from_points(points: Vec<Point2>) -> Self {
        PlanarSet { points, ..Default::default() }
    }

    pub fn push_curve(&mut self, c: &SampledCurve) -> Result<(), GeometryError> {
        let mut pts = c.planar_points()?;
        if c.closed && pts.len() > 2 && pts[0] != pts[pts.len() - 1] {
            pts.push(pts[0]);
        }
        self.polylines.push(pts);
        if let Some(t) = c.tail {
            self.regions.push(t);
        }
        Ok(())
    }

    pub fn union(mut self, other: PlanarSet) -> PlanarSet {
        self.polylines.extend(other.polylines);
        self.points.extend(other.points);
        self.regions.extend(other.regions);
        self.spans.extend(other.spans);
        self
    }

    pub fn is_empty(&self) -> bool {
        self.polylines.iter().all(|p| p.is_empty())
            && self.points.is_empty()
            && self.regions.is_empty()
            && self.spans.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.polylines.iter().map(Vec::len).sum::<usize>() + self.points.len()
    }

    pub fn is_bounded(&self) -> bool {
        self.regions.iter().all(Region::is_bounded) && self.spans.iter().all(RadialSpan::is_bounded)
    }

    pub fn check_finite(&self) -> Result<(), FractalError> {
        let bad = self
            .polylines
            .iter()
            .flatten()
            .chain(self.points.iter())
            .position(|p| !p.is_finite());
        match bad {
            Some(i) => Err(GeometryError::NonFinite(i).into()),
            None => Ok(()),
        }
    }

    pub fn bounding_box(&self) -> Result<BoundingBox, FractalError> {
        if self.is_empty() {
            return Err(FractalError::EmptySet);
        }
        if !self.is_bounded() {
            return Err(FractalError::Unbounded);
        }
        let mut b = BoundingBox::empty();
        for p in self.polylines.iter().flatten().chain(self.points.iter()) {
            b.add(*p);
        }
        for r in &self.regions {
            let c = r.center();
            let (_, outer) = r.radii();
            b.add(c - Point2::new(outer, outer));
            b.add(c + Point2::new(outer, outer));
        }
        for s in &self.spans {
            let (a, e) = s.endpoints();
            b.add(a);
            b.add(e);
        }
        Ok(b)
    }

    /// Infimum of `|p - w|` over the set.
    pub fn distance_from(&self, w: Point2) -> f64 {
        let mut d = f64::INFINITY;
        for line in &self.polylines {
            if line.len() == 1 {
                d = d.min(line[0].distance(w));
            }
            for s in line.windows(2) {
                d = d.min(segment_distance(w, s[0], s[1]));
            }
        }
        for p in &self.points {
            d = d.min(p.distance(w));
        }
        for r in &self.regions {
            d = d.min(r.distance_to(w));
        }
        for s in &self.spans {
            let (a, b) = s.endpoints();
            if s.is_bounded() {
                d = d.min(segment_distance(w, a, b));
            } else {
                let dir = Point2::from_polar(1.0, s.angle);
                let t = (w - a).dot(dir).max(0.0);
                d = d.min(w.distance(a + dir * t));
            }
        }
        d
    }

    /// Image under `x -> (x - w)/|x - w|^2`, vertex by vertex. For `w != 0`
    /// radial spans become polylines along their image arcs.
    pub fn inverted_about(&self, w: Point2) -> Result<PlanarSet, GeometryError> {
        let polylines = self
            .polylines
            .iter()
            .map(|l| l.iter().map(|p| invert_about(*p, w)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<_, _>>()?;
        let points = self
            .points
            .iter()
            .map(|p| invert_about(*p, w))
            .collect::<Result<_, _>>()?;
        let regions = self
            .regions
            .iter()
            .map(|r| r.inverted_about(w))
            .collect::<Result<_, _>>()?;
        if w == Point2::ORIGIN {
            let spans = self.spans.iter().map(RadialSpan::inverted).collect::<Result<_, _>>()?;
            return Ok(PlanarSet { polylines, points, regions, spans });
        }
        let mut polylines: Vec<Vec<Point2>> = polylines;
        for s in &self.spans {
            polylines.push(span_image(s, w)?);
        }
        Ok(PlanarSet { polylines, points, regions, spans: Vec::new() })
    }

    pub fn inverted(&self) -> Result<PlanarSet, GeometryError> {
        self.inverted_about(Point2::ORIGIN)
    }

    /// `x -> scale * R(angle) x + shift`.
    pub fn similarity(&self, scale: f64, angle: f64, shift: Point2) -> PlanarSet {
        let (s, c) = angle.sin_cos();
        let f = |p: Point2| Point2::new(scale * (c * p.x - s * p.y), scale * (s * p.x + c * p.y)) + shift;
        let regions = self
            .regions
            .iter()
            .map(|r| match *r {
                Region::Disc { center, radius } => Region::Disc { center: f(center), radius: scale * radius },
                Region::Exterior { center, radius } => {
                    Region::Exterior { center: f(center), radius: scale * radius }
                }
                Region::Annulus { center, inner, outer } => Region::Annulus {
                    center: f(center),
                    inner: scale * inner,
                    outer: scale * outer,
                },
            })
            .collect();
        let mut out = PlanarSet {
            polylines: self.polylines.iter().map(|l| l.iter().map(|p| f(*p)).collect()).collect(),
            points: self.points.iter().map(|p| f(*p)).collect(),
            regions,
            spans: Vec::new(),
        };
        for s in &self.spans {
            if s.is_bounded() && shift == Point2::ORIGIN {
                out.spans.push(RadialSpan::new(s.angle + angle, scale * s.inner, scale * s.outer));
            } else {
                let (a, b) = s.endpoints();
                out.polylines.push(vec![f(a), f(b)]);
            }
        }
        out
    }

    /// Splits the set along the unit circle into the part inside the closed
    /// unit disc and the part outside it. Polylines are cut at their
    /// crossings with the circle. Regions must be discs or exteriors lying
    /// on one side, or annuli and discs centered at the origin.
    pub fn split_at_unit_circle(&self) -> Result<(PlanarSet, PlanarSet), GeometryError> {
        let mut inner = PlanarSet::default();
        let mut outer = PlanarSet::default();
        for line in &self.polylines {
            let mut current: Vec<Point2> = Vec::new();
            let mut current_inside: Option<bool> = None;
            for (i, &p) in line.iter().enumerate() {
                let inside = p.norm() <= 1.0;
                if i > 0 {
                    let prev = line[i - 1];
                    if current_inside != Some(inside) {
                        if let Some(x) = unit_circle_crossing(prev, p) {
                            current.push(x);
                            flush(&mut current, current_inside, &mut inner, &mut outer);
                            current.push(x);
                        } else {
                            flush(&mut current, current_inside, &mut inner, &mut outer);
                        }
                    }
                }
                current_inside = Some(inside);
                current.push(p);
            }
            flush(&mut current, current_inside, &mut inner, &mut outer);
        }
        for &p in &self.points {
            if p.norm() <= 1.0 {
                inner.points.push(p);
            } else {
                outer.points.push(p);
            }
        }
        for r in &self.regions {
            let c = r.center();
            let (lo, hi) = r.radii();
            if c.norm() + hi <= 1.0 {
                inner.regions.push(*r);
            } else if lo - c.norm() >= 1.0 {
                outer.regions.push(*r);
            } else if c == Point2::ORIGIN {
                inner.regions.push(Region::annulus(c, lo, 1.0));
                outer.regions.push(Region::annulus(c, 1.0, hi));
            } else if matches!(r, Region::Disc { .. }) && c.norm() - hi >= 1.0 {
                outer.regions.push(*r);
            } else {
                return Err(GeometryError::Unsupported("region crossing the unit circle off-center"));
            }
        }
        for s in &self.spans {
            if s.outer <= 1.0 {
                inner.spans.push(*s);
            } else if s.inner >= 1.0 {
                outer.spans.push(*s);
            } else {
                inner.spans.push(RadialSpan::new(s.angle, s.inner, 1.0));
                outer.spans.push(RadialSpan::new(s.angle, 1.0, s.outer));
            }
        }
        Ok((inner, outer))
    }
}

fn flush(current: &mut Vec<Point2>, inside: Option<bool>, inner: &mut PlanarSet, outer: &mut PlanarSet) {
    let pts = std::mem::take(current);
    if pts.is_empty() {
        return;
    }
    let target = if inside == Some(true) { inner } else { outer };
    if pts.len() == 1 {
        target.points.push(pts[0]);
    } else {
        target.polylines.push(pts);
    }
}

/// Point where segment `ab` crosses the unit circle, when exactly one end is inside.
fn unit_circle_crossing(a: Point2, b: Point2) -> Option<Point2> {
    let d = b - a;
    let qa = d.norm_sq();
    let qb = 2.0 * a.dot(d);
    let qc = a.norm_sq() - 1.0;
    let disc = qb * qb - 4.0 * qa * qc;
    if qa == 0.0 || disc < 0.0 {
        return None;
    }
    let sq = disc.sqrt();
    [(-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa)]
        .into_iter()
        .find(|t| (0.0..=1.0).contains(t))
        .map(|t| a + d * t)
}

pub(crate) fn segment_distance(p: Point2, a: Point2, b: Point2) -> f64 {
    let d = b - a;
    let l2 = d.norm_sq();
    if l2 == 0.0 {
        return p.distance(a);
    }
    let t = ((p - a).dot(d) / l2).clamp(0.0, 1.0);
    p.distance(a + d * t)
}

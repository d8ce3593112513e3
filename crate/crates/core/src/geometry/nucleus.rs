//! Cutting a sampled spiral where its turns become denser than the
//! finest scale of interest and replacing the rest by a solid region.

use serde::{Deserialize, Serialize};

use super::{GeometryError, Point2, Polar, Region, SampledCurve};

/// Where a spiral accumulates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Limit {
    Origin,
    Infinity,
    /// The circle `r = radius`.
    Circle { radius: f64 },
}

impl Limit {
    /// Distance-like radial coordinate that shrinks toward the limit.
    fn coordinate(self, r: f64) -> f64 {
        match self {
            Limit::Origin => r,
            Limit::Infinity => r.recip(),
            Limit::Circle { radius } => r - radius,
        }
    }
}

/// Radial spacing between each vertex and the point one full turn later,
/// measured in the coordinate of `limit`. `None` where the curve ends
/// before completing that turn.
pub fn turn_spacing(points: &[Polar], limit: Limit) -> Vec<Option<f64>> {
    let n = points.len();
    let mut out = vec![None; n];
    if n < 2 {
        return out;
    }
    let dir = (points[n - 1].phi - points[0].phi).signum();
    let tau = 2.0 * std::f64::consts::PI;
    let mut j = 0;
    for i in 0..n {
        let target = points[i].phi + dir * tau;
        if j < i {
            j = i;
        }
        while j + 1 < n && dir * (points[j + 1].phi - target) < 0.0 {
            j += 1;
        }
        if j + 1 >= n {
            break;
        }
        let (a, b) = (points[j], points[j + 1]);
        let t = ((target - a.phi) / (b.phi - a.phi)).clamp(0.0, 1.0);
        let wa = limit.coordinate(a.r);
        let wb = limit.coordinate(b.r);
        let w_next = wa + t * (wb - wa);
        out[i] = Some((limit.coordinate(points[i].r) - w_next).abs());
    }
    out
}

/// Truncates a polar spiral accumulating at `limit`.
///
/// The cut is placed at the first vertex after which consecutive turns are
/// never more than `eps_min/2` apart. One more full turn is kept; every
/// vertex after it is dropped and the region swept by the dropped part is
/// recorded as the curve's tail: a disc about the origin, an annulus around
/// the limit circle, or the exterior of a disc. The kept turn bounds the
/// filled region, so for every `eps >= eps_min` the eps-neighborhood of the
/// dropped turns coincides with that of the filled region. Without it, a
/// fast exponential approach to a circle would be padded by a band as wide
/// as the distance at the cut.
pub fn truncate_at_nucleus(
    curve: &SampledCurve,
    limit: Limit,
    eps_min: f64,
) -> Result<SampledCurve, GeometryError> {
    if !(eps_min > 0.0) {
        return Err(GeometryError::InvalidParameter("eps_min must be positive"));
    }
    let pts = curve
        .polar_points()
        .ok_or(GeometryError::Unsupported("nucleus truncation needs a polar curve"))?;
    let spacing = turn_spacing(pts, limit);
    let threshold = 0.5 * eps_min;

    // Suffix maximum over the known spacings.
    let mut cut = None;
    let mut worst: f64 = 0.0;
    for i in (0..pts.len()).rev() {
        match spacing[i] {
            None => continue,
            Some(g) => {
                worst = worst.max(g);
                if worst <= threshold {
                    cut = Some(i);
                } else {
                    break;
                }
            }
        }
    }
    let cut = cut.ok_or(GeometryError::NucleusNotReached)?;
    let dir = (pts[pts.len() - 1].phi - pts[0].phi).signum();
    let tau = 2.0 * std::f64::consts::PI;
    let cut = (cut..pts.len())
        .find(|&j| dir * (pts[j].phi - pts[cut].phi) >= tau)
        .unwrap_or(pts.len() - 1)
        .max(1);

    let tail_pts = &pts[cut..];
    let r_min = tail_pts.iter().map(|p| p.r).fold(f64::INFINITY, f64::min);
    let r_max = tail_pts.iter().map(|p| p.r).fold(0.0, f64::max);
    let tail = match limit {
        Limit::Origin => Region::disc(Point2::ORIGIN, r_max),
        Limit::Infinity => Region::Exterior {
            center: Point2::ORIGIN,
            radius: r_min,
        },
        Limit::Circle { radius } => {
            Region::annulus(Point2::ORIGIN, radius.min(r_min), radius.max(r_max))
        }
    };
    let mut out = curve.slice(0, cut)?;
    out.source = format!("truncated({})", curve.source);
    Ok(out.with_tail(Some(tail)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn power_spiral(alpha: f64, phi_end: f64, step: f64) -> SampledCurve {
        let n = ((phi_end - 1.0) / step) as usize;
        let pts = (0..=n)
            .map(|k| {
                let phi = 1.0 + k as f64 * step;
                Polar::new(phi.powf(-alpha), phi)
            })
            .collect();
        SampledCurve::polar(pts, "test").unwrap()
    }

    #[test]
    fn cut_respects_turn_spacing() {
        let c = power_spiral(0.5, 3000.0, 0.05);
        let eps_min = 1e-3;
        let t = truncate_at_nucleus(&c, Limit::Origin, eps_min).unwrap();
        let last = *t.polar_points().unwrap().last().unwrap();
        // the cut sits one turn before the last kept vertex
        let phi_cut = last.phi - 2.0 * std::f64::consts::PI;
        let gap = phi_cut.powf(-0.5) - last.phi.powf(-0.5);
        assert!(gap <= 0.5 * eps_min * 1.01, "gap {gap}");
        assert!(gap >= 0.5 * eps_min * 0.99, "gap {gap}");
        let Some(Region::Disc { radius, .. }) = t.tail else {
            panic!("expected a disc tail");
        };
        assert!((radius - last.r).abs() < 1e-12);
    }

    #[test]
    fn infinity_uses_reciprocal_radius() {
        let c = power_spiral(0.5, 3000.0, 0.05).inverted().unwrap();
        let a = truncate_at_nucleus(&c, Limit::Infinity, 1e-3).unwrap();
        let b = truncate_at_nucleus(&power_spiral(0.5, 3000.0, 0.05), Limit::Origin, 1e-3).unwrap();
        assert_eq!(a.len(), b.len());
        assert!(matches!(a.tail, Some(Region::Exterior { .. })));
    }

    #[test]
    fn limit_cycle_tail_is_annulus() {
        let pts = (0..60000)
            .map(|k| {
                let phi = 1.0 + k as f64 * 0.05;
                Polar::new(1.0 + 1.0 / phi, phi)
            })
            .collect();
        let c = SampledCurve::polar(pts, "cycle").unwrap();
        let t = truncate_at_nucleus(&c, Limit::Circle { radius: 1.0 }, 1e-3).unwrap();
        let Some(Region::Annulus { inner, outer, .. }) = t.tail else {
            panic!("expected an annulus tail");
        };
        assert_eq!(inner, 1.0);
        assert!(outer > 1.0 && outer < 1.01);
    }

    #[test]
    fn too_short_curve_reports_nucleus_not_reached() {
        let c = power_spiral(0.25, 50.0, 0.05);
        assert!(matches!(
            truncate_at_nucleus(&c, Limit::Origin, 1e-4),
            Err(GeometryError::NucleusNotReached)
        ));
    }
}

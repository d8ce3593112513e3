//! Grid box counting: the number of eps-cells meeting the set.

use rayon::prelude::*;

use crate::geometry::{Point2, Region};

use super::sausage::{Method, SausageProfile};
use super::set::PlanarSet;
use super::FractalError;

struct CellGrid {
    origin: Point2,
    side: f64,
}

impl CellGrid {
    fn cell(&self, p: Point2) -> (i64, i64) {
        (
            ((p.x - self.origin.x) / self.side).floor() as i64,
            ((p.y - self.origin.y) / self.side).floor() as i64,
        )
    }

    /// Cells crossed by segment `ab`.
    fn traverse(&self, a: Point2, b: Point2, out: &mut Vec<(i64, i64)>) {
        let (mut i, mut j) = self.cell(a);
        let end = self.cell(b);
        out.push((i, j));
        let d = b - a;
        let step_i = if d.x > 0.0 { 1 } else { -1 };
        let step_j = if d.y > 0.0 { 1 } else { -1 };
        let next = |k: i64, step: i64, o: f64, s: f64| o + (k + i64::from(step > 0)) as f64 * s;
        let (mut t_x, dt_x) = if d.x != 0.0 {
            ((next(i, step_i, self.origin.x, self.side) - a.x) / d.x, self.side / d.x.abs())
        } else {
            (f64::INFINITY, f64::INFINITY)
        };
        let (mut t_y, dt_y) = if d.y != 0.0 {
            ((next(j, step_j, self.origin.y, self.side) - a.y) / d.y, self.side / d.y.abs())
        } else {
            (f64::INFINITY, f64::INFINITY)
        };
        let steps = (end.0 - i).abs() + (end.1 - j).abs();
        for _ in 0..steps {
            if t_x < t_y {
                i += step_i;
                t_x += dt_x;
            } else {
                j += step_j;
                t_y += dt_y;
            }
            out.push((i, j));
        }
    }

    fn region(&self, r: &Region, out: &mut Vec<(i64, i64)>) {
        let c = r.center();
        let (inner, outer) = r.radii();
        let (j0, j1) = (self.cell(c - Point2::new(0.0, outer)).1, self.cell(c + Point2::new(0.0, outer)).1);
        for j in j0..=j1 {
            let y_lo = self.origin.y + j as f64 * self.side;
            let y_hi = y_lo + self.side;
            let dy = if c.y < y_lo {
                y_lo - c.y
            } else if c.y > y_hi {
                c.y - y_hi
            } else {
                0.0
            };
            if dy > outer {
                continue;
            }
            let w = (outer * outer - dy * dy).sqrt();
            let (i0, i1) = (self.cell(Point2::new(c.x - w, c.y)).0, self.cell(Point2::new(c.x + w, c.y)).0);
            for i in i0..=i1 {
                if inner > 0.0 {
                    let x_lo = self.origin.x + i as f64 * self.side;
                    let fx = (x_lo - c.x).abs().max((x_lo + self.side - c.x).abs());
                    let fy = (y_lo - c.y).abs().max((y_hi - c.y).abs());
                    if fx.hypot(fy) < inner {
                        continue;
                    }
                }
                out.push((i, j));
            }
        }
    }
}

/// Number of grid cells of side `eps` meeting a bounded set.
pub fn box_count(set: &PlanarSet, eps: f64) -> Result<u64, FractalError> {
    if !(eps > 0.0) {
        return Err(FractalError::InvalidEps("eps must be positive"));
    }
    let bbox = set.bounding_box()?;
    let grid = CellGrid { origin: bbox.min, side: eps };
    let mut cells = Vec::new();
    for line in &set.polylines {
        if line.len() == 1 {
            cells.push(grid.cell(line[0]));
        }
        for w in line.windows(2) {
            grid.traverse(w[0], w[1], &mut cells);
        }
    }
    cells.extend(set.points.iter().map(|p| grid.cell(*p)));
    for r in &set.regions {
        grid.region(r, &mut cells);
    }
    for s in &set.spans {
        let (a, b) = s.endpoints();
        grid.traverse(a, b, &mut cells);
    }
    cells.par_sort_unstable();
    cells.dedup();
    Ok(cells.len() as u64)
}

/// Box counts expressed as covered areas `N(eps) eps^2`, so the profile
/// can be fitted exactly like a sausage profile.
pub fn box_counts(set: &PlanarSet, eps: &[f64]) -> Result<SausageProfile, FractalError> {
    set.check_finite()?;
    let samples = eps
        .par_iter()
        .map(|&e| box_count(set, e).map(|n| (e, n as f64 * e * e)))
        .collect::<Result<Vec<_>, _>>()?;
    SausageProfile::new(samples, Method::BoxCount)
}

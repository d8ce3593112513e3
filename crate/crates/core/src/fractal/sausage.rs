//! Area of the eps-neighborhood of a planar set.
//!
//! The plane is cut into horizontal rows of height `eps/8` anchored at the
//! bounding-box corner. On each row center line the neighborhood is a union
//! of intervals (one per segment capsule, point disc or region), which is
//! computed exactly, merged, and weighted by the row height.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::geometry::{Point2, Region};

use super::set::PlanarSet;
use super::FractalError;

/// Rows per eps.
pub const ROWS_PER_EPS: f64 = 8.0;

const ROWS_PER_BLOCK: u64 = 512;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    SausageGrid,
    BoxCount,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::SausageGrid => "sausage_grid",
            Method::BoxCount => "box_count",
        }
    }
}

/// `(eps, area)` pairs with `eps` strictly decreasing.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SausageProfile {
    pub samples: Vec<(f64, f64)>,
    pub method: Method,
}

impl SausageProfile {
    pub fn new(mut samples: Vec<(f64, f64)>, method: Method) -> Result<Self, FractalError> {
        samples.sort_by(|a, b| b.0.total_cmp(&a.0));
        for w in samples.windows(2) {
            if !(w[1].0 < w[0].0) {
                return Err(FractalError::InvalidEps("scales must be distinct"));
            }
        }
        if samples.iter().any(|s| !(s.1 > 0.0) || !s.1.is_finite()) {
            return Err(FractalError::DegenerateProfile);
        }
        Ok(SausageProfile { samples, method })
    }

    pub fn eps(&self) -> impl Iterator<Item = f64> + '_ {
        self.samples.iter().map(|s| s.0)
    }

    pub fn areas(&self) -> impl Iterator<Item = f64> + '_ {
        self.samples.iter().map(|s| s.1)
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// True when areas never grow as eps shrinks (up to relative `slack`).
    pub fn is_monotone(&self, slack: f64) -> bool {
        self.samples.windows(2).all(|w| w[1].1 <= w[0].1 * (1.0 + slack))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SausageOptions {
    /// Verify the polyline sampling against the smallest eps first.
    pub check_sampling: bool,
    /// Upper bound on row-interval evaluations per scale.
    pub budget: u64,
}

impl Default for SausageOptions {
    fn default() -> Self {
        SausageOptions {
            check_sampling: true,
            budget: 2_000_000_000,
        }
    }
}

/// Checks that every polyline segment is either shorter than `eps_min/4`
/// or so nearly straight that the curve it stands for stays within
/// `eps_min/16` of it. The deviation is estimated as `L * theta / 8` from
/// the segment length `L` and the larger turning angle at its ends.
pub fn check_sampling(set: &PlanarSet, eps_min: f64) -> Result<(), FractalError> {
    let max_gap = eps_min / 4.0;
    let max_dev = eps_min / 16.0;
    for (k, line) in set.polylines.iter().enumerate() {
        let n = line.len();
        for i in 0..n.saturating_sub(1) {
            let d = line[i + 1] - line[i];
            let len = d.norm();
            if len <= max_gap {
                continue;
            }
            let mut theta: f64 = 0.0;
            if i > 0 {
                theta = theta.max(turning_angle(line[i] - line[i - 1], d));
            }
            if i + 2 < n {
                theta = theta.max(turning_angle(d, line[i + 2] - line[i + 1]));
            }
            let dev = len * theta / 8.0;
            if !(dev <= max_dev) {
                return Err(FractalError::UnderSampled {
                    polyline: k,
                    segment: i,
                    gap: len,
                    required: max_gap,
                });
            }
        }
    }
    Ok(())
}

/// Smallest `eps_min` that [`check_sampling`] accepts for this set.
pub fn min_sampling_eps(set: &PlanarSet) -> f64 {
    let mut need: f64 = 0.0;
    for line in &set.polylines {
        let n = line.len();
        for i in 0..n.saturating_sub(1) {
            let d = line[i + 1] - line[i];
            let len = d.norm();
            let mut theta: f64 = 0.0;
            if i > 0 {
                theta = theta.max(turning_angle(line[i] - line[i - 1], d));
            }
            if i + 2 < n {
                theta = theta.max(turning_angle(d, line[i + 2] - line[i + 1]));
            }
            need = need.max((4.0 * len).min(2.0 * len * theta));
        }
    }
    need
}

fn turning_angle(a: Point2, b: Point2) -> f64 {
    let cross = a.x * b.y - a.y * b.x;
    cross.atan2(a.dot(b)).abs()
}

#[derive(Clone, Copy, Debug)]
enum Prim {
    Capsule(Point2, Point2),
    Disc { center: Point2, radius: f64 },
    Annulus { center: Point2, inner: f64, outer: f64 },
}

impl Prim {
    fn y_range(&self, eps: f64) -> (f64, f64) {
        match *self {
            Prim::Capsule(a, b) => (a.y.min(b.y) - eps, a.y.max(b.y) + eps),
            Prim::Disc { center, radius } => (center.y - radius, center.y + radius),
            Prim::Annulus { center, outer, .. } => (center.y - outer, center.y + outer),
        }
    }

    fn push_intervals(&self, y: f64, eps: f64, out: &mut Vec<(f64, f64)>) {
        match *self {
            Prim::Capsule(a, b) => {
                if let Some(iv) = capsule_row(a, b, eps, y) {
                    out.push(iv);
                }
            }
            Prim::Disc { center, radius } => {
                if let Some(w) = half_chord(radius, y - center.y) {
                    out.push((center.x - w, center.x + w));
                }
            }
            Prim::Annulus { center, inner, outer } => {
                let dy = y - center.y;
                if let Some(wo) = half_chord(outer, dy) {
                    match half_chord(inner, dy) {
                        Some(wi) if wi > 0.0 => {
                            out.push((center.x - wo, center.x - wi));
                            out.push((center.x + wi, center.x + wo));
                        }
                        _ => out.push((center.x - wo, center.x + wo)),
                    }
                }
            }
        }
    }
}

fn half_chord(radius: f64, dy: f64) -> Option<f64> {
    let w2 = radius * radius - dy * dy;
    (w2 >= 0.0).then(|| w2.sqrt())
}

/// `{t : lo <= c t + e <= hi}` as an interval (empty when reversed).
fn slab(c: f64, e: f64, lo: f64, hi: f64) -> (f64, f64) {
    if c == 0.0 {
        if e >= lo && e <= hi {
            (f64::NEG_INFINITY, f64::INFINITY)
        } else {
            (f64::INFINITY, f64::NEG_INFINITY)
        }
    } else {
        let t1 = (lo - e) / c;
        let t2 = (hi - e) / c;
        (t1.min(t2), t1.max(t2))
    }
}

/// Intersection of the line `Y = y` with the set of points within `eps` of segment `ab`.
fn capsule_row(a: Point2, b: Point2, eps: f64, y: f64) -> Option<(f64, f64)> {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for p in [a, b] {
        if let Some(w) = half_chord(eps, y - p.y) {
            lo = lo.min(p.x - w);
            hi = hi.max(p.x + w);
        }
    }
    let d = b - a;
    let len = d.norm();
    if len > 0.0 {
        let u = d * len.recip();
        let dy = y - a.y;
        // |n.(p - a)| <= eps with n = (-u.y, u.x), and 0 <= u.(p - a) <= len.
        let (s1, e1) = slab(-u.y, u.x * dy, -eps, eps);
        let (s2, e2) = slab(u.x, u.y * dy, 0.0, len);
        let (s, e) = (s1.max(s2), e1.min(e2));
        if s <= e {
            lo = lo.min(a.x + s);
            hi = hi.max(a.x + e);
        }
    }
    (lo <= hi).then_some((lo, hi))
}

fn primitives(set: &PlanarSet, eps: f64) -> Result<Vec<Prim>, FractalError> {
    let mut prims = Vec::new();
    for line in &set.polylines {
        match line.len() {
            0 => {}
            1 => prims.push(Prim::Disc { center: line[0], radius: eps }),
            _ => prims.extend(line.windows(2).map(|w| Prim::Capsule(w[0], w[1]))),
        }
    }
    prims.extend(set.points.iter().map(|&p| Prim::Disc { center: p, radius: eps }));
    for r in &set.regions {
        match *r {
            Region::Disc { center, radius } => prims.push(Prim::Disc { center, radius: radius + eps }),
            Region::Annulus { center, inner, outer } => {
                if inner - eps > 0.0 {
                    prims.push(Prim::Annulus { center, inner: inner - eps, outer: outer + eps });
                } else {
                    prims.push(Prim::Disc { center, radius: outer + eps });
                }
            }
            Region::Exterior { .. } => return Err(FractalError::Unbounded),
        }
    }
    for s in &set.spans {
        if !s.is_bounded() {
            return Err(FractalError::Unbounded);
        }
        let (a, b) = s.endpoints();
        prims.push(Prim::Capsule(a, b));
    }
    Ok(prims)
}

struct Grid {
    y0: f64,
    h: f64,
}

impl Grid {
    /// Rows whose center line meets `[lo, hi]`, as an inclusive range.
    fn rows(&self, lo: f64, hi: f64) -> Option<(u64, u64)> {
        let first = ((lo - self.y0) / self.h - 0.5).ceil().max(0.0);
        let last = ((hi - self.y0) / self.h - 0.5).floor();
        (last >= first).then(|| (first as u64, last as u64))
    }

    fn center(&self, j: u64) -> f64 {
        self.y0 + (j as f64 + 0.5) * self.h
    }
}

/// Area of the eps-neighborhood of a bounded set at one scale.
pub fn sausage_area(set: &PlanarSet, eps: f64, budget: u64) -> Result<f64, FractalError> {
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(FractalError::InvalidEps("eps must be positive and finite"));
    }
    let bbox = set.bounding_box()?;
    let prims = primitives(set, eps)?;
    let grid = Grid { y0: bbox.min.y - eps, h: eps / ROWS_PER_EPS };
    let total_rows = ((bbox.max.y - bbox.min.y) + 2.0 * eps) / grid.h;
    if !(total_rows < (1u64 << 40) as f64) {
        return Err(FractalError::Resource { needed: u64::MAX, budget });
    }

    // Assign primitives to row blocks.
    let mut ranges: Vec<(u64, u64)> = Vec::with_capacity(prims.len());
    let mut pairs: Vec<(u64, u32)> = Vec::with_capacity(prims.len() + prims.len() / 4);
    let mut work: u64 = 0;
    for (i, p) in prims.iter().enumerate() {
        let (lo, hi) = p.y_range(eps);
        let r = grid.rows(lo, hi).unwrap_or((1, 0));
        ranges.push(r);
        if r.0 > r.1 {
            continue;
        }
        work += r.1 - r.0 + 1;
        for b in r.0 / ROWS_PER_BLOCK..=r.1 / ROWS_PER_BLOCK {
            pairs.push((b, i as u32));
        }
    }
    if work > budget {
        return Err(FractalError::Resource { needed: work, budget });
    }
    pairs.sort_unstable();

    let mut groups: Vec<&[(u64, u32)]> = Vec::new();
    let mut start = 0;
    for i in 1..=pairs.len() {
        if i == pairs.len() || pairs[i].0 != pairs[start].0 {
            groups.push(&pairs[start..i]);
            start = i;
        }
    }

    let sums: Vec<f64> = groups
        .par_iter()
        .map(|g| block_length(g, &prims, &ranges, &grid, eps))
        .collect();
    Ok(sums.iter().sum::<f64>() * grid.h)
}

fn block_length(group: &[(u64, u32)], prims: &[Prim], ranges: &[(u64, u64)], grid: &Grid, eps: f64) -> f64 {
    let block = group[0].0;
    let b0 = block * ROWS_PER_BLOCK;
    let b1 = b0 + ROWS_PER_BLOCK - 1;
    let mut rows: Vec<Vec<(f64, f64)>> = vec![Vec::new(); ROWS_PER_BLOCK as usize];
    for &(_, pi) in group {
        let (r0, r1) = ranges[pi as usize];
        for j in r0.max(b0)..=r1.min(b1) {
            prims[pi as usize].push_intervals(grid.center(j), eps, &mut rows[(j - b0) as usize]);
        }
    }
    let mut total = 0.0;
    for row in rows.iter_mut() {
        total += merged_length(row);
    }
    total
}

fn merged_length(row: &mut [(f64, f64)]) -> f64 {
    if row.is_empty() {
        return 0.0;
    }
    row.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let mut total = 0.0;
    let (mut lo, mut hi) = row[0];
    for &(a, b) in &row[1..] {
        if a > hi {
            total += hi - lo;
            lo = a;
            hi = b;
        } else if b > hi {
            hi = b;
        }
    }
    total + (hi - lo)
}

/// Sausage areas over several scales (evaluated in parallel).
pub fn sausage_areas(set: &PlanarSet, eps: &[f64]) -> Result<SausageProfile, FractalError> {
    sausage_areas_with(set, eps, &SausageOptions::default())
}

pub fn sausage_areas_with(
    set: &PlanarSet,
    eps: &[f64],
    options: &SausageOptions,
) -> Result<SausageProfile, FractalError> {
    if eps.is_empty() {
        return Err(FractalError::InvalidEps("no scales given"));
    }
    if eps.iter().any(|e| !(*e > 0.0) || !e.is_finite()) {
        return Err(FractalError::InvalidEps("eps must be positive and finite"));
    }
    set.check_finite()?;
    if options.check_sampling {
        let eps_min = eps.iter().copied().fold(f64::INFINITY, f64::min);
        check_sampling(set, eps_min)?;
    }
    let areas = eps
        .par_iter()
        .map(|&e| sausage_area(set, e, options.budget).map(|a| (e, a)))
        .collect::<Result<Vec<_>, _>>()?;
    SausageProfile::new(areas, Method::SausageGrid)
}

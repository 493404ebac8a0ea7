// SPDX-License-Identifier: Apache-2.0

//! Exhaustive placement search over pairs of boundary samples.

use std::f64::consts::TAU;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::geom::{segment_distance, shoelace_area, wrap_angle, Point};
use crate::quad::{CyclicQuad, Drawing, Vertex};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BruteForceOptions {
    /// Number of boundary samples used as positions for `a` and `b`.
    pub grid: usize,
    /// Placements with smaller scale are skipped.
    pub min_scale: f64,
    /// Restrict the search to drawings within this distance of a reference.
    pub near: Option<(Drawing, f64)>,
}

impl BruteForceOptions {
    pub fn new(grid: usize) -> Self {
        BruteForceOptions { grid, min_scale: 0.0, near: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Placement {
    pub drawing: Drawing,
    /// Largest `|signed distance|` of `c` and `d` to the boundary polyline.
    pub residual: f64,
    /// Boundary sample indices of `a` and `b`.
    pub indices: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BruteForceReport {
    pub best: Option<Placement>,
    /// Mean distance between consecutive grid samples.
    pub spacing: f64,
    pub evaluated: usize,
}

/// Closed convex polyline with fast distance bounds.
pub struct Boundary {
    points: Vec<Point>,
    center: Point,
    start_angle: f64,
    /// Polar angle of each point about `center`, relative to point 0.
    angles: Vec<f64>,
    inradius: f64,
    outradius: f64,
}

impl Boundary {
    /// `points` must be in convex position; either orientation is accepted.
    pub fn new(points: &[Point]) -> Self {
        let points = drop_collinear(oriented(points));
        let n = points.len() as f64;
        let center = points.iter().fold(Point::ORIGIN, |acc, &p| acc + p) * (1.0 / n);
        let start_angle = (points[0] - center).angle();
        let mut angles: Vec<f64> = points.iter().map(|&p| wrap_angle((p - center).angle() - start_angle)).collect();
        angles[0] = 0.0;
        let m = points.len();
        let inradius = (0..m)
            .map(|k| segment_distance(center, points[k], points[(k + 1) % m]))
            .fold(f64::INFINITY, f64::min);
        let outradius = points.iter().map(|&p| p.distance(center)).fold(0.0, f64::max);
        Boundary { points, center, start_angle, angles, inradius, outradius }
    }

    /// Corners of the polyline after merging collinear samples.
    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn perimeter(&self) -> f64 {
        let m = self.points.len();
        (0..m).map(|k| self.points[k].distance(self.points[(k + 1) % m])).sum()
    }

    fn edge(&self, k: usize) -> (Point, Point) {
        (self.points[k], self.points[(k + 1) % self.points.len()])
    }

    pub fn contains(&self, p: Point) -> bool {
        let (a, b) = self.edge(self.edge_towards(p));
        (b - a).cross(p - a) >= 0.0
    }

    /// Index of the edge hit by the ray from the center through `p`.
    fn edge_towards(&self, p: Point) -> usize {
        let delta = wrap_angle((p - self.center).angle() - self.start_angle);
        let k = self.angles.partition_point(|&a| a <= delta);
        k.max(1) - 1
    }

    /// A lower bound on `|signed distance|`, exact up to the inradius to
    /// outradius ratio.
    pub fn distance_bound(&self, p: Point) -> f64 {
        let (a, b) = self.edge(self.edge_towards(p));
        let v = p - self.center;
        let r = v.norm();
        if r == 0.0 {
            return self.inradius;
        }
        let e = b - a;
        let denom = v.cross(e);
        if denom == 0.0 {
            return 0.0;
        }
        // ray center + s v meets the edge line at s = (a - center) × e / (v × e)
        let s = (a - self.center).cross(e) / denom;
        let t = (1.0 - s).abs() * r;
        t * self.inradius / self.outradius
    }

    pub fn signed_distance(&self, p: Point) -> f64 {
        let m = self.points.len();
        let d = (0..m)
            .map(|k| {
                let (a, b) = self.edge(k);
                segment_distance(p, a, b)
            })
            .fold(f64::INFINITY, f64::min);
        if self.contains(p) {
            -d
        } else {
            d
        }
    }
}

/// Remove samples lying on the segment between their neighbors; the
/// polyline is unchanged as a set.
fn drop_collinear(points: Vec<Point>) -> Vec<Point> {
    let m = points.len();
    let keep: Vec<bool> = (0..m)
        .map(|k| {
            let (p, q, r) = (points[(k + m - 1) % m], points[k], points[(k + 1) % m]);
            let (u, v) = (q - p, r - q);
            u.cross(v).abs() > 1e-12 * u.norm() * v.norm() || u.dot(v) < 0.0
        })
        .collect();
    let kept: Vec<Point> = (0..m).filter(|&k| keep[k]).map(|k| points[k]).collect();
    if kept.len() >= 3 {
        kept
    } else {
        points
    }
}

/// Best placement of `quad` with `a` and `b` on grid samples of `boundary`,
/// minimizing the distance of `c` and `d` to the boundary.
pub fn brute_force_inscribe(boundary: &[Point], quad: &CyclicQuad, opts: &BruteForceOptions) -> BruteForceReport {
    let shape = Boundary::new(boundary);
    let samples = oriented(boundary);
    let m = samples.len();
    let grid = opts.grid.clamp(2, m);
    let idx: Vec<usize> = (0..grid).map(|k| k * m / grid).collect();
    let spacing = shape.perimeter() / grid as f64;

    let canon = quad.canonical_vertices();
    let (pa, pb) = (canon[Vertex::A.index()], canon[Vertex::B.index()]);
    let side = pa.distance(pb);
    let best_bits = AtomicU64::new(f64::INFINITY.to_bits());
    let reference_length = opts.near.map(|(d, _)| d.scale).unwrap_or(1.0);

    let rows: Vec<(Option<Placement>, usize)> = (0..grid)
        .into_par_iter()
        .map(|i| {
            let qa = samples[idx[i]];
            let mut best: Option<Placement> = None;
            let mut evaluated = 0;
            for (j, &jj) in idx.iter().enumerate() {
                if j == i {
                    continue;
                }
                let qb = samples[jj];
                if qa.distance(qb) / side < opts.min_scale {
                    continue;
                }
                let Some(drawing) = Drawing::from_side(pa, pb, qa, qb) else { continue };
                if let Some((reference, radius)) = opts.near {
                    if drawing.distance(&reference, reference_length) > radius {
                        continue;
                    }
                }
                let bound = f64::from_bits(best_bits.load(Ordering::Relaxed));
                let pc = drawing.apply(canon[Vertex::C.index()]);
                let pd = drawing.apply(canon[Vertex::D.index()]);
                if shape.distance_bound(pc).max(shape.distance_bound(pd)) > bound {
                    continue;
                }
                evaluated += 1;
                let rc = shape.signed_distance(pc).abs();
                if rc > bound {
                    continue;
                }
                let residual = rc.max(shape.signed_distance(pd).abs());
                if best.map_or(true, |b| residual < b.residual) {
                    best = Some(Placement { drawing, residual, indices: (idx[i], jj) });
                    best_bits.fetch_min(residual.to_bits(), Ordering::Relaxed);
                }
            }
            (best, evaluated)
        })
        .collect();

    let evaluated = rows.iter().map(|r| r.1).sum();
    let best = rows
        .into_iter()
        .filter_map(|r| r.0)
        .min_by(|a, b| a.residual.total_cmp(&b.residual).then(a.indices.cmp(&b.indices)));
    BruteForceReport { best, spacing, evaluated }
}

fn oriented(points: &[Point]) -> Vec<Point> {
    let mut points = points.to_vec();
    if shoelace_area(&points) < 0.0 {
        points.reverse();
    }
    points
}

/// `n` points on a circle, for tests and examples.
pub fn circle_boundary(radius: f64, n: usize) -> Vec<Point> {
    (0..n).map(|k| Point::unit(TAU * k as f64 / n as f64) * radius).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::ConvexPolygon;

    #[test]
    fn distance_bound_is_a_lower_bound() {
        let b = Boundary::new(&ConvexPolygon::thin_triangle().sample_boundary(500));
        for k in 0..400 {
            let p = Point::new(-0.2 + 1.4 * (k % 20) as f64 / 19.0, -0.1 + 0.4 * (k / 20) as f64 / 19.0);
            let d = b.signed_distance(p).abs();
            assert!(b.distance_bound(p) <= d + 1e-15, "{p:?}");
        }
    }

    #[test]
    fn circle_square() {
        let r = brute_force_inscribe(&circle_boundary(1.0, 400), &CyclicQuad::square(), &BruteForceOptions::new(400));
        let best = r.best.unwrap();
        assert!(best.residual < 1e-3);
        assert!((best.drawing.scale - 1.0).abs() < 1e-3);
    }
}

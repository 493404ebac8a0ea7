// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use rand::Rng;

use crate::geom::{convex_hull, segment_distance, shoelace_area, Point};

/// A convex polygon with counterclockwise vertices.
///
/// Polygons are the non-smooth inputs; the solver only ever sees them through
/// [`crate::approx::smooth_polygon`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Point>", into = "Vec<Point>")]
pub struct ConvexPolygon {
    vertices: Vec<Point>,
}

impl TryFrom<Vec<Point>> for ConvexPolygon {
    type Error = Error;
    fn try_from(v: Vec<Point>) -> Result<Self> {
        ConvexPolygon::new(v)
    }
}

impl From<ConvexPolygon> for Vec<Point> {
    fn from(p: ConvexPolygon) -> Self {
        p.vertices
    }
}

impl ConvexPolygon {
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::InvalidPolygon(format!("need at least 3 vertices, got {n}")));
        }
        if let Some(i) = vertices.iter().position(|p| !p.is_finite()) {
            return Err(Error::InvalidPolygon(format!("vertex {i} is not finite")));
        }
        let scale = vertices
            .iter()
            .flat_map(|p| vertices.iter().map(move |q| p.distance(*q)))
            .fold(0.0, f64::max);
        if scale == 0.0 {
            return Err(Error::InvalidPolygon("all vertices coincide".into()));
        }
        let mut turning = 0.0;
        for i in 0..n {
            let prev = vertices[(i + n - 1) % n];
            let cur = vertices[i];
            let next = vertices[(i + 1) % n];
            let e0 = cur - prev;
            let e1 = next - cur;
            if e0.norm() <= 1e-12 * scale || e1.norm() <= 1e-12 * scale {
                return Err(Error::InvalidPolygon(format!("repeated vertex at index {i}")));
            }
            let turn = e0.cross(e1) / (e0.norm() * e1.norm());
            if turn <= 1e-12 {
                let what = if turn.abs() <= 1e-12 { "collinear" } else { "a reflex or clockwise" };
                return Err(Error::InvalidPolygon(format!("vertex {i} makes {what} turn")));
            }
            turning += e0.cross(e1).atan2(e0.dot(e1));
        }
        if (turning - 2.0 * PI).abs() > 1e-9 {
            return Err(Error::InvalidPolygon(format!(
                "boundary winds {:.3} turns; polygon is not simple",
                turning / (2.0 * PI)
            )));
        }
        Ok(ConvexPolygon { vertices })
    }

    /// The axis-aligned unit square `[0, 1]²`.
    pub fn unit_square() -> Self {
        ConvexPolygon {
            vertices: vec![
                Point::new(0.0, 0.0),
                Point::new(1.0, 0.0),
                Point::new(1.0, 1.0),
                Point::new(0.0, 1.0),
            ],
        }
    }

    /// Isosceles triangle with base angles π/10 and apex angle 4π/5 on the unit base.
    pub fn thin_triangle() -> Self {
        let apex = Point::new(0.5, 0.5 * (PI / 10.0).tan());
        ConvexPolygon { vertices: vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), apex] }
    }

    /// Hull of `count` uniform points in the unit disk, redrawn until it has
    /// at least four vertices.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, count: usize) -> Self {
        assert!(count >= 4, "need at least four points");
        loop {
            let points: Vec<Point> = (0..count)
                .map(|_| {
                    let r = rng.gen::<f64>().sqrt();
                    Point::unit(rng.gen_range(0.0..std::f64::consts::TAU)) * r
                })
                .collect();
            let hull = convex_hull(&points);
            if hull.len() >= 4 {
                if let Ok(poly) = ConvexPolygon::new(hull) {
                    return poly;
                }
            }
        }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Vertex average; strictly interior for a convex polygon.
    pub fn centroid(&self) -> Point {
        let n = self.vertices.len() as f64;
        let s = self.vertices.iter().fold(Point::ORIGIN, |acc, &p| acc + p);
        s * (1.0 / n)
    }

    pub fn area(&self) -> f64 {
        shoelace_area(&self.vertices)
    }

    pub fn diameter(&self) -> f64 {
        let v = &self.vertices;
        let mut d: f64 = 0.0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                d = d.max(v[i].distance(v[j]));
            }
        }
        d
    }

    pub fn perimeter(&self) -> f64 {
        self.edges().map(|(a, b)| a.distance(b)).sum()
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn contains(&self, p: Point) -> bool {
        self.edges().all(|(a, b)| (b - a).cross(p - a) >= 0.0)
    }

    /// Euclidean signed distance to the boundary, negative inside.
    pub fn signed_distance(&self, p: Point) -> f64 {
        if self.contains(p) {
            let inner = self
                .edges()
                .map(|(a, b)| {
                    let e = b - a;
                    e.cross(p - a) / e.norm()
                })
                .fold(f64::INFINITY, f64::min);
            -inner
        } else {
            self.edges().map(|(a, b)| segment_distance(p, a, b)).fold(f64::INFINITY, f64::min)
        }
    }

    /// `n` boundary points equally spaced by arclength, starting at vertex 0.
    pub fn sample_boundary(&self, n: usize) -> Vec<Point> {
        let perimeter = self.perimeter();
        let step = perimeter / n as f64;
        let mut out = Vec::with_capacity(n);
        let mut edges = self.edges();
        let (mut a, mut b) = edges.next().expect("polygon has edges");
        let mut edge_start = 0.0;
        for k in 0..n {
            let s = k as f64 * step;
            while s > edge_start + a.distance(b) {
                edge_start += a.distance(b);
                match edges.next() {
                    Some(e) => (a, b) = e,
                    None => break,
                }
            }
            let t = ((s - edge_start) / a.distance(b)).clamp(0.0, 1.0);
            out.push(a + (b - a) * t);
        }
        out
    }
}

// SPDX-License-Identifier: Apache-2.0

//! Planar points and the handful of vector operations the solver needs.

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// A point (or displacement) in the plane.
///
/// Serialized as a two-element array `[x, y]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    /// Unit vector at angle `theta` from the positive x axis.
    #[inline]
    pub fn unit(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Point { x: c, y: s }
    }

    #[inline]
    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product.
    #[inline]
    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    /// Quarter turn counterclockwise.
    #[inline]
    pub fn perp(self) -> Self {
        Point { x: -self.y, y: self.x }
    }

    #[inline]
    pub fn rotate(self, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Point { x: c * self.x - s * self.y, y: s * self.x + c * self.y }
    }

    #[inline]
    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    #[inline]
    pub fn distance(self, other: Point) -> f64 {
        (self - other).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl From<[f64; 2]> for Point {
    fn from([x, y]: [f64; 2]) -> Self {
        Point { x, y }
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

impl Add for Point {
    type Output = Point;
    #[inline]
    fn add(self, rhs: Point) -> Point {
        Point { x: self.x + rhs.x, y: self.y + rhs.y }
    }
}

impl AddAssign for Point {
    #[inline]
    fn add_assign(&mut self, rhs: Point) {
        self.x += rhs.x;
        self.y += rhs.y;
    }
}

impl Sub for Point {
    type Output = Point;
    #[inline]
    fn sub(self, rhs: Point) -> Point {
        Point { x: self.x - rhs.x, y: self.y - rhs.y }
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    #[inline]
    fn mul(self, rhs: f64) -> Point {
        Point { x: self.x * rhs, y: self.y * rhs }
    }
}

impl Mul<Point> for f64 {
    type Output = Point;
    #[inline]
    fn mul(self, rhs: Point) -> Point {
        rhs * self
    }
}

impl Neg for Point {
    type Output = Point;
    #[inline]
    fn neg(self) -> Point {
        Point { x: -self.x, y: -self.y }
    }
}

/// Wrap an angle into `[0, 2π)`.
#[inline]
pub fn wrap_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(std::f64::consts::TAU);
    // rem_euclid can round up to exactly TAU
    if t >= std::f64::consts::TAU {
        0.0
    } else {
        t
    }
}

/// Wrap an angle into `(-π, π]`.
#[inline]
pub fn wrap_signed(theta: f64) -> f64 {
    let t = wrap_angle(theta);
    if t > std::f64::consts::PI {
        t - std::f64::consts::TAU
    } else {
        t
    }
}

/// Signed area of a closed polygon (counterclockwise positive).
pub fn shoelace_area(points: &[Point]) -> f64 {
    let n = points.len();
    if n < 3 {
        return 0.0;
    }
    // Centering keeps the cross products small for far-off polygons.
    let o = points[0];
    let mut acc = 0.0;
    for i in 0..n {
        let p = points[i] - o;
        let q = points[(i + 1) % n] - o;
        acc += p.cross(q);
    }
    0.5 * acc
}

/// Signed area of a smooth closed curve sampled at increasing parameters
/// `params` over one `period`.
///
/// Each segment is the cubic Hermite interpolant with tangents from the
/// three-point parabola, and Green's integral is exact on it, so the error
/// is fourth order in the spacing where plain shoelace is second order.
pub fn periodic_curve_area(params: &[f64], points: &[Point], period: f64) -> f64 {
    let n = points.len();
    assert_eq!(params.len(), n);
    if n < 3 {
        return 0.0;
    }
    let t = |k: isize| {
        let m = n as isize;
        let wraps = k.div_euclid(m);
        params[k.rem_euclid(m) as usize] + period * wraps as f64
    };
    let p = |k: isize| points[k.rem_euclid(n as isize) as usize];
    let tangents: Vec<Point> = (0..n as isize)
        .map(|k| {
            let (h1, h2) = (t(k) - t(k - 1), t(k + 1) - t(k));
            p(k - 1) * (-h2 / (h1 * (h1 + h2))) + p(k) * ((h2 - h1) / (h1 * h2)) + p(k + 1) * (h1 / (h2 * (h1 + h2)))
        })
        .collect();
    let nodes = crate::root::gauss_legendre(3);
    let o = points[0];
    let mut acc = 0.0;
    for k in 0..n {
        let h = t(k as isize + 1) - t(k as isize);
        let (p0, p1) = (points[k] - o, p(k as isize + 1) - o);
        let (m0, m1) = (tangents[k] * h, tangents[(k + 1) % n] * h);
        for &(x, w) in &nodes {
            let s = 0.5 * (x + 1.0);
            let (s2, s3) = (s * s, s * s * s);
            let pos = p0 * (2.0 * s3 - 3.0 * s2 + 1.0) + m0 * (s3 - 2.0 * s2 + s) + p1 * (3.0 * s2 - 2.0 * s3) + m1 * (s3 - s2);
            let vel = p0 * (6.0 * s2 - 6.0 * s) + m0 * (3.0 * s2 - 4.0 * s + 1.0) + p1 * (6.0 * s - 6.0 * s2) + m1 * (3.0 * s2 - 2.0 * s);
            acc += 0.5 * w * pos.cross(vel);
        }
    }
    0.5 * acc
}

/// Unsigned distance from `p` to the segment `[a, b]`.
pub fn segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_squared();
    if len2 == 0.0 {
        return p.distance(a);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    p.distance(a + ab * t)
}

/// Counterclockwise hull, dropping points on hull edges.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    let mut hull: Vec<Point> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        for &p in &pts {
            while hull.len() >= start + 2 {
                let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
                if (b - a).cross(p - a) > 0.0 {
                    break;
                }
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
        if pass == 0 {
            pts.reverse();
        }
    }
    hull
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{PI, TAU};

    #[test]
    fn curve_area_beats_shoelace() {
        let n = 256;
        let params: Vec<f64> = (0..n).map(|k| TAU * k as f64 / n as f64).collect();
        let pts: Vec<Point> = params.iter().map(|&t| Point::new(2.0 * t.cos(), t.sin())).collect();
        let exact = 2.0 * PI;
        assert!((shoelace_area(&pts) - exact).abs() > 1e-4);
        assert!((periodic_curve_area(&params, &pts, TAU) - exact).abs() < 1e-6);
    }

    #[test]
    fn wrapping() {
        assert_eq!(wrap_angle(-PI / 2.0), 1.5 * PI);
        assert_eq!(wrap_angle(TAU), 0.0);
        assert!((wrap_signed(1.5 * PI) + PI / 2.0).abs() < 1e-15);
        assert_eq!(wrap_signed(PI), PI);
    }

    #[test]
    fn shoelace_unit_square() {
        let sq = [
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ];
        assert_eq!(shoelace_area(&sq), 1.0);
        let rev: Vec<_> = sq.iter().rev().copied().collect();
        assert_eq!(shoelace_area(&rev), -1.0);
    }

    #[test]
    fn point_serializes_as_pair() {
        let s = serde_json::to_string(&Point::new(1.5, -2.0)).unwrap();
        assert_eq!(s, "[1.5,-2.0]");
        let p: Point = serde_json::from_str("[3,4]").unwrap();
        assert_eq!(p.norm(), 5.0);
    }
}

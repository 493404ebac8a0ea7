// SPDX-License-Identifier: Apache-2.0

//! Closed strictly convex curves described by their support function.
//!
//! A [`ConvexCurve`] stores `h(θ)`, the support value about a reference
//! `center` in direction `u(θ) = (cos θ, sin θ)`. Every geometric query is
//! answered from `h`, `h'` and `h''`:
//!
//! * the boundary point with outward normal `u(θ)` is `h u + h' u⊥`,
//! * the radius of curvature there is `h + h''`,
//! * the enclosed area is `½ ∮ h (h + h'') dθ`,
//! * the signed distance of `p` is `max_θ ⟨p - center, u(θ)⟩ - h(θ)`.

mod polygon;
mod samples;
pub(crate) mod smoothed;

use std::f64::consts::{PI, TAU};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::Point;
use crate::root::{brent, gauss_legendre, golden_max};

pub use polygon::ConvexPolygon;
use samples::SupportSamples;
use smoothed::SmoothedPolygon;

/// Default length of the support sample grid (and of the convexity certificate).
pub const SUPPORT_GRID: usize = 4096;

/// Relative slab gap below which a chord counts as tangent.
pub const TANGENCY_TOL: f64 = 1e-10;

/// Coarse scan size for the signed-distance maximization.
const DISTANCE_SCAN: usize = 96;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CurveKind {
    Circle,
    Ellipse,
    SmoothedPolygon,
    SupportSamples,
}

impl fmt::Display for CurveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CurveKind::Circle => "circle",
            CurveKind::Ellipse => "ellipse",
            CurveKind::SmoothedPolygon => "smoothed-polygon",
            CurveKind::SupportSamples => "support-samples",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
enum Shape {
    Circle { radius: f64 },
    Ellipse { a: f64, b: f64, rotation: f64 },
    Smoothed(SmoothedPolygon),
    Samples(SupportSamples),
}

/// Support value and its first two derivatives at one direction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Support {
    pub h: f64,
    pub dh: f64,
    pub ddh: f64,
}

/// The two ends of a chord, ordered along the chord direction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Chord {
    pub start: Point,
    pub end: Point,
    /// Outward normal angles at the two ends.
    pub start_normal: f64,
    pub end_normal: f64,
}

impl Chord {
    pub fn length(&self) -> f64 {
        self.start.distance(self.end)
    }
}

/// An immutable closed strictly convex curve.
#[derive(Clone, Debug)]
pub struct ConvexCurve {
    shape: Shape,
    center: Point,
    diameter: f64,
    /// `(u(θ_k), h(θ_k))` at the coarse signed-distance scan angles.
    scan: Vec<(Point, f64)>,
}

impl ConvexCurve {
    pub fn circle(radius: f64, center: Point) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidCurve(format!("circle radius must be positive, got {radius}")));
        }
        Self::build(Shape::Circle { radius }, center)
    }

    pub fn unit_circle() -> Self {
        Self::circle(1.0, Point::ORIGIN).expect("unit circle is valid")
    }

    /// Ellipse with semi-axes `a` (along x) and `b`, centered at the origin.
    pub fn ellipse(a: f64, b: f64) -> Result<Self> {
        Self::ellipse_with(a, b, Point::ORIGIN, 0.0)
    }

    /// Ellipse with semi-axes `a`, `b`, with the `a` axis at angle `rotation`.
    pub fn ellipse_with(a: f64, b: f64, center: Point, rotation: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
            return Err(Error::InvalidCurve(format!("ellipse semi-axes must be positive, got ({a}, {b})")));
        }
        Self::build(Shape::Ellipse { a, b, rotation }, center)
    }

    /// Curve from uniform samples `h(2πk/N)` about `center`.
    pub fn from_support_samples(samples: Vec<f64>, center: Point) -> Result<Self> {
        if samples.len() < 8 {
            return Err(Error::InvalidCurve(format!("need at least 8 support samples, got {}", samples.len())));
        }
        if let Some(k) = samples.iter().position(|h| !(h.is_finite() && *h > 0.0)) {
            return Err(Error::InvalidCurve(format!(
                "support sample {k} is {}; the center must be strictly inside",
                samples[k]
            )));
        }
        Self::build(Shape::Samples(SupportSamples::new(samples)), center)
    }

    pub(crate) fn smoothed(poly: SmoothedPolygon, center: Point) -> Result<Self> {
        Self::build(Shape::Smoothed(poly), center)
    }

    fn build(shape: Shape, center: Point) -> Result<Self> {
        if !center.is_finite() {
            return Err(Error::InvalidCurve("center is not finite".into()));
        }
        let mut curve = ConvexCurve { shape, center, diameter: 0.0, scan: Vec::new() };
        curve.certify()?;
        curve.diameter = curve.measure_diameter();
        let step = TAU / DISTANCE_SCAN as f64;
        curve.scan = (0..DISTANCE_SCAN)
            .map(|k| {
                let theta = step * k as f64;
                (Point::unit(theta), curve.support(theta).h)
            })
            .collect();
        Ok(curve)
    }

    /// Positivity of `h` and of the second-difference estimate of `h + h''`
    /// on the [`SUPPORT_GRID`].
    fn certify(&self) -> Result<()> {
        let n = SUPPORT_GRID;
        let step = TAU / n as f64;
        let hs: Vec<f64> = (0..n).map(|k| self.support(step * k as f64).h).collect();
        for k in 0..n {
            let theta = step * k as f64;
            if !(hs[k] > 0.0) {
                return Err(Error::InvalidCurve(format!(
                    "support value {} at theta = {theta}; the center must be strictly inside",
                    hs[k]
                )));
            }
            let second = (hs[(k + 1) % n] - 2.0 * hs[k] + hs[(k + n - 1) % n]) / (step * step);
            let value = hs[k] + second;
            if !(value > 0.0) {
                return Err(Error::NotStrictlyConvex { theta, value });
            }
        }
        Ok(())
    }

    fn measure_diameter(&self) -> f64 {
        // width in direction θ is h(θ) + h(θ + π); the diameter is the maximal width
        let n = 1024;
        let width = |t: f64| self.support(t).h + self.support(t + PI).h;
        let (k, _) = (0..n)
            .map(|k| (k, width(PI * k as f64 / n as f64)))
            .fold((0, f64::MIN), |best, cur| if cur.1 > best.1 { cur } else { best });
        let step = PI / n as f64;
        let t = step * k as f64;
        golden_max(|x| Ok(width(x)), t - step, t + step, 1e-12).map(|(_, w)| w).unwrap_or(width(t))
    }

    pub fn kind(&self) -> CurveKind {
        match self.shape {
            Shape::Circle { .. } => CurveKind::Circle,
            Shape::Ellipse { .. } => CurveKind::Ellipse,
            Shape::Smoothed(_) => CurveKind::SmoothedPolygon,
            Shape::Samples(_) => CurveKind::SupportSamples,
        }
    }

    pub fn center(&self) -> Point {
        self.center
    }

    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    /// Radius when the curve is a circle.
    pub fn circle_radius(&self) -> Option<f64> {
        match self.shape {
            Shape::Circle { radius } => Some(radius),
            _ => None,
        }
    }

    /// Smoothing radius and kernel width of a smoothed polygon.
    pub fn smoothing(&self) -> Option<(f64, f64)> {
        match &self.shape {
            Shape::Smoothed(s) => Some((s.radius(), s.sigma())),
            _ => None,
        }
    }

    /// Support samples of a `support-samples` curve.
    pub fn support_samples(&self) -> Option<&[f64]> {
        match &self.shape {
            Shape::Samples(s) => Some(s.samples()),
            _ => None,
        }
    }

    /// `h`, `h'`, `h''` at direction `theta` (about [`Self::center`]).
    pub fn support(&self, theta: f64) -> Support {
        match &self.shape {
            Shape::Circle { radius } => Support { h: *radius, dh: 0.0, ddh: 0.0 },
            Shape::Ellipse { a, b, rotation } => {
                let (s, c) = (theta - rotation).sin_cos();
                let (a2, b2) = (a * a, b * b);
                let q = a2 * c * c + b2 * s * s;
                let h = q.sqrt();
                let dq = 2.0 * (b2 - a2) * s * c;
                let ddq = 2.0 * (b2 - a2) * (c * c - s * s);
                let dh = dq / (2.0 * h);
                let ddh = ddq / (2.0 * h) - dq * dq / (4.0 * h * h * h);
                Support { h, dh, ddh }
            }
            Shape::Smoothed(sp) => {
                let p = sp.point(theta);
                let u = Point::unit(theta);
                let h = p.dot(u);
                Support { h, dh: p.dot(u.perp()), ddh: sp.curvature_radius(theta) - h }
            }
            Shape::Samples(s) => {
                let (h, dh, ddh) = s.eval(theta);
                Support { h, dh, ddh }
            }
        }
    }

    /// Radius of curvature `h + h''` at normal angle `theta`.
    pub fn curvature_radius(&self, theta: f64) -> f64 {
        match &self.shape {
            Shape::Smoothed(sp) => sp.curvature_radius(theta),
            _ => {
                let s = self.support(theta);
                s.h + s.ddh
            }
        }
    }

    /// The boundary point whose outward unit normal is `u(theta)`.
    pub fn boundary_point(&self, theta: f64) -> Point {
        match &self.shape {
            Shape::Smoothed(sp) => self.center + sp.point(theta),
            Shape::Ellipse { a, b, rotation } => {
                // closed form avoids the h' cancellation on very flat ellipses
                let (s, c) = (theta - rotation).sin_cos();
                let h = (a * a * c * c + b * b * s * s).sqrt();
                let local = Point::new(a * a * c / h, b * b * s / h);
                self.center + local.rotate(*rotation)
            }
            _ => {
                let s = self.support(theta);
                let u = Point::unit(theta);
                self.center + u * s.h + u.perp() * s.dh
            }
        }
    }

    /// Signed Euclidean distance from `p` to the curve: positive outside,
    /// negative inside.
    pub fn signed_distance(&self, p: Point) -> f64 {
        let q = p - self.center;
        if let Shape::Circle { radius } = self.shape {
            return q.norm() - radius;
        }
        let gap = |theta: f64| q.dot(Point::unit(theta)) - self.support(theta).h;
        let slope = |theta: f64| q.dot(Point::unit(theta).perp()) - self.support(theta).dh;

        let step = TAU / DISTANCE_SCAN as f64;
        let (k, coarse) = self
            .scan
            .iter()
            .enumerate()
            .map(|(k, &(u, h))| (k, q.dot(u) - h))
            .fold((0, f64::MIN), |best, cur| if cur.1 > best.1 { cur } else { best });
        let (lo, hi) = (step * (k as f64 - 1.0), step * (k as f64 + 1.0));
        let (s_lo, s_hi) = (slope(lo), slope(hi));
        let theta = if s_lo > 0.0 && s_hi < 0.0 {
            brent(|t| Ok(slope(t)), lo, hi, s_lo, s_hi, 1e-14, 0.0).map(|r| r.x).ok()
        } else {
            None
        };
        let best = match theta {
            Some(t) => gap(t),
            None => golden_max(|t| Ok(gap(t)), lo, hi, 1e-12).map(|(_, g)| g).unwrap_or(f64::MIN),
        };
        best.max(coarse)
    }

    /// Offsets `(lo, hi)` of the two support lines with unit normal `u(normal)`,
    /// measured as `⟨x, u(normal)⟩`.
    pub fn slab(&self, normal: f64) -> (f64, f64) {
        let c = self.center.dot(Point::unit(normal));
        (c - self.support(normal + PI).h, c + self.support(normal).h)
    }

    /// Intersections of the curve with the line `{x : ⟨x, n⟩ = offset}`, where
    /// `n = u(direction + π/2)` is the left normal of `direction`.
    ///
    /// `start` and `end` are ordered so that `end - start` points along
    /// `direction`; both lie on the line exactly.
    pub fn chord_at_offset(&self, direction: f64, offset: f64) -> Result<Chord> {
        let nu = direction + PI / 2.0;
        let n = Point::unit(nu);
        let (lo, hi) = self.slab(nu);
        let tol = TANGENCY_TOL * self.diameter;
        if offset < lo - tol || offset > hi + tol || !offset.is_finite() {
            return Err(Error::NoChord { offset, lo, hi });
        }
        if offset <= lo + tol || offset >= hi - tol {
            return Err(Error::DegenerateChord { offset, lo, hi });
        }
        let tau = offset - self.center.dot(n);
        let along = |theta: f64| (self.boundary_point(theta) - self.center).dot(n) - tau;

        // start: normals in [ν, ν + π] where ⟨p, n⟩ falls from hi to lo
        let (a, b) = (nu, nu + PI);
        let start_normal = brent(|t| Ok(along(t)), a, b, hi - offset, lo - offset, 1e-15, 0.0)?.x;
        let (a, b) = (nu - PI, nu);
        let end_normal = brent(|t| Ok(along(t)), a, b, lo - offset, hi - offset, 1e-15, 0.0)?.x;

        let project = |p: Point| p - n * (p.dot(n) - offset);
        Ok(Chord {
            start: project(self.boundary_point(start_normal)),
            end: project(self.boundary_point(end_normal)),
            start_normal,
            end_normal,
        })
    }

    /// Area enclosed by the curve, `½ ∮ h (h + h'') dθ`.
    pub fn enclosed_area(&self) -> f64 {
        if let Shape::Circle { radius } = self.shape {
            return PI * radius * radius;
        }
        let mut breaks: Vec<f64> = (0..=256).map(|k| TAU * k as f64 / 256.0).collect();
        if let Shape::Smoothed(sp) = &self.shape {
            // resolve each Gaussian bump of the curvature radius
            const OFFSETS: [f64; 15] =
                [-10.0, -7.0, -5.0, -4.0, -3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 7.0, 10.0];
            for &nu in sp.edge_normals() {
                for off in OFFSETS {
                    let t = crate::geom::wrap_angle(nu + off * sp.sigma());
                    breaks.push(t);
                }
            }
            breaks.sort_by(f64::total_cmp);
            breaks.dedup_by(|a, b| (*a - *b).abs() < 1e-15);
        }
        let rule = gauss_legendre(10);
        let mut area = 0.0;
        for w in breaks.windows(2) {
            let (a, b) = (w[0], w[1]);
            let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
            for &(x, wt) in &rule {
                let t = mid + half * x;
                area += wt * half * self.support(t).h * self.curvature_radius(t);
            }
        }
        0.5 * area
    }

    /// `n` boundary points at equally spaced normal angles.
    pub fn sample_by_normal(&self, n: usize) -> Vec<Point> {
        (0..n).map(|k| self.boundary_point(TAU * k as f64 / n as f64)).collect()
    }

    /// `n` boundary points approximately equally spaced by arclength.
    pub fn sample_by_arclength(&self, n: usize) -> Vec<Point> {
        let fine = 16 * n.max(64);
        let pts = self.sample_by_normal(fine);
        let mut cum = Vec::with_capacity(fine + 1);
        cum.push(0.0);
        for i in 0..fine {
            let d = pts[i].distance(pts[(i + 1) % fine]);
            cum.push(cum[i] + d);
        }
        let total = cum[fine];
        let mut out = Vec::with_capacity(n);
        let mut j = 0;
        for k in 0..n {
            let s = total * k as f64 / n as f64;
            while cum[j + 1] < s {
                j += 1;
            }
            // refine the normal angle between samples j and j+1 by arclength fraction
            let frac = (s - cum[j]) / (cum[j + 1] - cum[j]).max(f64::MIN_POSITIVE);
            let theta = TAU * (j as f64 + frac) / fine as f64;
            out.push(self.boundary_point(theta));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ellipse21() -> ConvexCurve {
        ConvexCurve::ellipse(2.0, 1.0).unwrap()
    }

    #[test]
    fn circle_boundary_and_distance() {
        let c = ConvexCurve::unit_circle();
        assert_eq!(c.boundary_point(0.0), Point::new(1.0, 0.0));
        assert_eq!(c.signed_distance(Point::new(2.0, 0.0)), 1.0);
        assert_eq!(c.signed_distance(Point::ORIGIN), -1.0);
        assert!(c.signed_distance(Point::new(0.6, 0.8)).abs() < 1e-15);
        assert!((c.diameter() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn ellipse_axis_point() {
        let p = ellipse21().boundary_point(PI / 2.0);
        assert!(p.x.abs() < 1e-15 && (p.y - 1.0).abs() < 1e-15);
    }

    #[test]
    fn ellipse_signed_distance_matches_generic_route() {
        let e = ellipse21();
        // axis points have known distances
        assert!((e.signed_distance(Point::new(3.0, 0.0)) - 1.0).abs() < 1e-12);
        assert!((e.signed_distance(Point::new(0.0, 0.25)) + 0.75).abs() < 1e-12);
        assert!((e.signed_distance(Point::ORIGIN) + 1.0).abs() < 1e-12);
    }

    #[test]
    fn chords_on_circle() {
        let c = ConvexCurve::unit_circle();
        let ch = c.chord_at_offset(0.0, 0.0).unwrap();
        assert!((ch.start - Point::new(-1.0, 0.0)).norm() < 1e-14);
        assert!((ch.end - Point::new(1.0, 0.0)).norm() < 1e-14);
        let ch = c.chord_at_offset(0.0, 0.6).unwrap();
        assert!((ch.start - Point::new(-0.8, 0.6)).norm() < 1e-14);
        assert!((ch.end - Point::new(0.8, 0.6)).norm() < 1e-14);
    }

    #[test]
    fn chord_errors() {
        let c = ConvexCurve::unit_circle();
        assert!(matches!(c.chord_at_offset(0.0, 1.5), Err(Error::NoChord { .. })));
        assert!(matches!(c.chord_at_offset(0.0, 1.0), Err(Error::DegenerateChord { .. })));
        assert!(matches!(c.chord_at_offset(0.3, -1.0 + 1e-12), Err(Error::DegenerateChord { .. })));
    }

    #[test]
    fn areas() {
        assert!((ConvexCurve::unit_circle().enclosed_area() - PI).abs() < 1e-15);
        let a = ellipse21().enclosed_area();
        assert!((a - 2.0 * PI).abs() < 1e-12 * 2.0 * PI, "{a}");
        let r = ConvexCurve::ellipse_with(1.5, 0.5, Point::new(3.0, -1.0), 0.7).unwrap();
        assert!((r.enclosed_area() - 0.75 * PI).abs() < 1e-12);
    }

    #[test]
    fn support_samples_of_ellipse_match_closed_form() {
        let e = ellipse21();
        let h: Vec<f64> = (0..SUPPORT_GRID).map(|k| e.support(TAU * k as f64 / SUPPORT_GRID as f64).h).collect();
        let s = ConvexCurve::from_support_samples(h, Point::ORIGIN).unwrap();
        assert_eq!(s.kind(), CurveKind::SupportSamples);
        for k in 0..50 {
            let t = 0.1 + 0.123 * k as f64;
            assert!((s.boundary_point(t) - e.boundary_point(t)).norm() < 1e-12);
        }
        assert!((s.enclosed_area() - 2.0 * PI).abs() < 1e-10);
    }

    #[test]
    fn rejects_non_convex_samples() {
        // h = 1 + 0.5 cos 3θ has h + h'' = 1 - 4 cos 3θ, negative in places
        let n = 256;
        let h: Vec<f64> = (0..n).map(|k| 1.0 + 0.5 * (3.0 * TAU * k as f64 / n as f64).cos()).collect();
        assert!(matches!(
            ConvexCurve::from_support_samples(h, Point::ORIGIN),
            Err(Error::NotStrictlyConvex { .. })
        ));
        assert!(ConvexCurve::from_support_samples(vec![1.0, -1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0], Point::ORIGIN).is_err());
        assert!(ConvexCurve::circle(0.0, Point::ORIGIN).is_err());
    }
}

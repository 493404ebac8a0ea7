// SPDX-License-Identifier: Apache-2.0

//! Inscriptions in convex polygons as limits over smooth approximants.
//!
//! A polygon is replaced by [`smooth_polygon`] at a shrinking sequence of
//! radii. The inscribed drawings on the approximants converge linearly in the
//! radius, so [`inscribe_limit`] tests convergence on Richardson extrapolates
//! of the drawing sequence rather than on the raw sequence.

use std::f64::consts::PI;

use log::{debug, error, info, warn};
use serde::{Deserialize, Serialize};

use crate::curve::smoothed::SmoothedPolygon;
use crate::curve::{ConvexCurve, ConvexPolygon};
use crate::error::{Error, Result};
use crate::geom::{wrap_signed, Point};
use crate::quad::{CyclicQuad, Drawing};
use crate::solver::{inscribe_with, Candidate, InscriptionResult, SolverConfig, Status};

/// Smallest and largest admissible kernel widths, in radians.
pub const SIGMA_RANGE: (f64, f64) = (1e-9, 0.3);

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApproximationSchedule {
    pub r0: f64,
    pub factor: f64,
    pub max_steps: usize,
    pub convergence_tol: f64,
    /// Scale threshold, relative to the polygon diameter.
    pub degeneracy_tol: f64,
}

impl ApproximationSchedule {
    /// Default schedule for a polygon of the given diameter.
    pub fn for_diameter(diameter: f64) -> Self {
        ApproximationSchedule {
            r0: 0.1 * diameter,
            factor: 0.5,
            max_steps: 12,
            convergence_tol: 1e-6 * diameter,
            degeneracy_tol: 1e-3,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.r0 > 0.0
            && self.r0.is_finite()
            && self.factor > 0.0
            && self.factor < 1.0
            && self.convergence_tol > 0.0
            && self.degeneracy_tol > 0.0
            && self.max_steps >= 1;
        if ok {
            Ok(())
        } else {
            Err(Error::spec("schedule", format!("invalid approximation schedule {self:?}")))
        }
    }

    pub fn radii(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.max_steps).map(|k| self.r0 * self.factor.powi(k as i32))
    }
}

/// A strictly convex C∞ curve within Hausdorff distance `2r` of `poly`.
///
/// The polygon is rounded by a disk of radius `r` and its support function
/// is blurred by a Gaussian of angular width `r / (4 R)`, where `R` is the
/// largest vertex distance from the vertex centroid.
pub fn smooth_polygon(poly: &ConvexPolygon, r: f64) -> Result<ConvexCurve> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::Smoothing { radius: r, reason: "radius must be positive".into() });
    }
    let center = poly.centroid();
    let vertices: Vec<Point> = poly.vertices().iter().map(|&v| v - center).collect();
    let reach = vertices.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let sigma = r / (4.0 * reach);
    if sigma < SIGMA_RANGE.0 {
        return Err(Error::Smoothing {
            radius: r,
            reason: format!("kernel width {sigma:e} is below {:e}; use a larger radius", SIGMA_RANGE.0),
        });
    }
    if sigma > SIGMA_RANGE.1 {
        return Err(Error::Smoothing {
            radius: r,
            reason: format!("kernel width {sigma} exceeds {}; use a smaller radius", SIGMA_RANGE.1),
        });
    }
    ConvexCurve::smoothed(SmoothedPolygon::new(vertices, r, sigma), center)
}

/// One step of the schedule.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitStep {
    pub radius: f64,
    pub status: Status,
    /// Drawing tracked on this approximant.
    pub drawing: Option<Drawing>,
    /// Richardson extrapolate from this and the previous step.
    pub extrapolated: Option<Drawing>,
    /// Residual of `drawing` against the original polygon.
    pub polygon_residual: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitResult {
    /// Final verdict. Residual and vertices refer to the original polygon.
    pub result: InscriptionResult,
    pub steps: Vec<LimitStep>,
    /// Radius of the step at which the inner solver found nothing, if any.
    pub failed_radius: Option<f64>,
}

/// Largest `|signed distance|` to `poly` over the four vertices of `quad` under `d`.
pub fn polygon_residual(poly: &ConvexPolygon, quad: &CyclicQuad, d: &Drawing) -> f64 {
    d.vertex_positions(quad).iter().map(|&p| poly.signed_distance(p).abs()).fold(0.0, f64::max)
}

fn drawing_gap(a: &Drawing, b: &Drawing, diameter: f64) -> f64 {
    a.distance(b, diameter)
}

fn extrapolate(prev: &Drawing, cur: &Drawing, factor: f64) -> Drawing {
    let lin = |p: f64, c: f64| (c - factor * p) / (1.0 - factor);
    let rotation = prev.rotation + wrap_signed(cur.rotation - prev.rotation);
    Drawing {
        scale: lin(prev.scale, cur.scale),
        rotation: crate::geom::wrap_angle(lin(prev.rotation, rotation)),
        translation: Point::new(lin(prev.translation.x, cur.translation.x), lin(prev.translation.y, cur.translation.y)),
    }
}

/// Candidate closest to `target`; the largest-scale one when there is no target.
fn track<'a>(candidates: &'a [Candidate], target: Option<&Drawing>, diameter: f64) -> Option<&'a Candidate> {
    match target {
        None => candidates.iter().max_by(|a, b| a.drawing.scale.total_cmp(&b.drawing.scale)),
        Some(t) => candidates.iter().min_by(|a, b| {
            drawing_gap(&a.drawing, t, diameter).total_cmp(&drawing_gap(&b.drawing, t, diameter))
        }),
    }
}

fn is_rectangle(q: &CyclicQuad) -> bool {
    q.interior_angles().iter().all(|a| (a - PI / 2.0).abs() < 1e-12)
}

/// Inscribe `quad` in `poly` as the limit of inscriptions in smoothed copies.
///
/// Drawings are tracked from step to step by nearest parameters and
/// extrapolated to zero radius with a two-level Richardson tableau.
pub fn inscribe_limit(
    poly: &ConvexPolygon,
    quad: &CyclicQuad,
    sched: &ApproximationSchedule,
    cfg: &SolverConfig,
) -> Result<LimitResult> {
    sched.validate()?;
    let diameter = poly.diameter();
    let tol = sched.convergence_tol;
    let threshold = sched.degeneracy_tol * diameter;
    let mut steps: Vec<LimitStep> = Vec::new();
    let mut last: Option<InscriptionResult> = None;
    // rows of the tableau: raw drawing, first and second extrapolates
    let mut raw: Vec<Drawing> = Vec::new();
    let mut first: Vec<Drawing> = Vec::new();
    let mut limits: Vec<Drawing> = Vec::new();

    let finish = |mut result: InscriptionResult, drawing: Option<Drawing>, status: Status, steps, failed| {
        result.status = status;
        result.drawing = drawing;
        result.vertices = drawing.map(|d| d.vertex_positions(&result.quad));
        result.residual = drawing.map_or(f64::INFINITY, |d| polygon_residual(poly, &result.quad, &d));
        Ok(LimitResult { result, steps, failed_radius: failed })
    };

    for r in sched.radii() {
        let curve = smooth_polygon(poly, r)?;
        let inner = inscribe_with(&curve, quad, cfg)?;
        debug!("radius {r:e}: {:?} with {} candidates", inner.status, inner.candidates.len());
        if inner.status != Status::Found {
            steps.push(LimitStep { radius: r, status: inner.status, drawing: None, extrapolated: None, polygon_residual: None });
            warn!("no inscription on the approximant of radius {r:e}");
            return finish(inner, None, Status::NotFoundAtResolution, steps, Some(r));
        }
        let target = limits.last().or(first.last()).or(raw.last());
        let chosen = track(&inner.candidates, target, diameter).expect("found implies candidates").drawing;
        if let Some(prev) = raw.last() {
            first.push(extrapolate(prev, &chosen, sched.factor));
        }
        if first.len() >= 2 {
            let n = first.len();
            limits.push(extrapolate(&first[n - 2], &first[n - 1], sched.factor * sched.factor));
        }
        raw.push(chosen);
        let extrapolated = limits.last().or(first.last()).copied();
        steps.push(LimitStep {
            radius: r,
            status: Status::Found,
            drawing: Some(chosen),
            extrapolated,
            polygon_residual: Some(polygon_residual(poly, quad, &chosen)),
        });

        let limit_scale = limits.last().map_or(f64::INFINITY, |d| d.scale);
        if chosen.scale < threshold || limit_scale < threshold {
            if is_rectangle(quad) {
                error!("rectangle inscriptions degenerated at radius {r:e}; this indicates a solver failure");
            }
            return finish(inner, Some(chosen), Status::DegenerateLimit, steps, None);
        }
        if let [.., prev, cur] = limits[..] {
            let gap = drawing_gap(&prev, &cur, diameter);
            debug!("radius {r:e}: extrapolate moved by {gap:e}");
            if gap < tol && polygon_residual(poly, quad, &cur) <= 10.0 * tol {
                info!("converged at radius {r:e}");
                return finish(inner, Some(cur), Status::Found, steps, None);
            }
        }
        last = Some(inner);
    }
    let inner = last.expect("schedule has at least one step");
    let best = limits.last().or(raw.last()).copied();
    finish(inner, best, Status::NotFoundAtResolution, steps, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smoothing_errors() {
        let sq = ConvexPolygon::unit_square();
        assert!(matches!(smooth_polygon(&sq, 0.0), Err(Error::Smoothing { .. })));
        assert!(matches!(smooth_polygon(&sq, 1e-12), Err(Error::Smoothing { .. })));
        assert!(matches!(smooth_polygon(&sq, 5.0), Err(Error::Smoothing { .. })));
    }

    #[test]
    fn smoothed_square_area_exceeds_rounded_square_by_order_r() {
        for r in [0.1, 0.01] {
            let c = smooth_polygon(&ConvexPolygon::unit_square(), r).unwrap();
            let rounded = 1.0 + 4.0 * r + PI * r * r;
            let excess = c.enclosed_area() - rounded;
            assert!(excess > 0.0 && excess < 0.5 * r, "r = {r}: excess {excess}");
        }
    }

    #[test]
    fn extrapolation_is_exact_for_linear_sequences() {
        let at = |r: f64| Drawing::new(1.0 + 3.0 * r, 0.2 - r, Point::new(r, -2.0 * r)).unwrap();
        let e = extrapolate(&at(0.1), &at(0.05), 0.5);
        assert!((e.scale - 1.0).abs() < 1e-14);
        assert!((e.rotation - 0.2).abs() < 1e-14);
        assert!(e.translation.norm() < 1e-14);
    }

    #[test]
    fn schedule_validation() {
        let mut s = ApproximationSchedule::for_diameter(1.0);
        assert!(s.validate().is_ok());
        s.factor = 1.0;
        assert!(s.validate().is_err());
    }
}

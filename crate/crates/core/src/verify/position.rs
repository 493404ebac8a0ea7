// SPDX-License-Identifier: Apache-2.0

//! Convex-position predicate and randomized trials on pairs of drawings that
//! share a vertex.

use std::f64::consts::{PI, TAU};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{convex_hull, Point};
use crate::quad::{CyclicQuad, Drawing, Vertex};

/// Collinearity tolerance, relative to the point set's diameter.
pub const COLLINEAR_TOL: f64 = 1e-9;
/// Rejection attempts before a trial is skipped.
pub const MAX_ATTEMPTS: usize = 100_000;

/// Whether every point is a hull vertex with no three hull-adjacent points
/// collinear.
pub fn is_strictly_convex_position(points: &[Point]) -> Result<bool> {
    let n = points.len();
    if n < 3 {
        return Err(Error::InvalidPolygon(format!("need at least 3 points, got {n}")));
    }
    let mut diameter: f64 = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            diameter = diameter.max(points[i].distance(points[j]));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if points[i].distance(points[j]) <= 1e-12 * diameter {
                return Err(Error::CoincidentPoints(i, j));
            }
        }
    }
    let hull = convex_hull(points);
    if hull.len() != n {
        return Ok(false);
    }
    let tol = COLLINEAR_TOL * diameter;
    for k in 0..n {
        let (p, q, r) = (hull[(k + n - 1) % n], hull[k], hull[(k + 1) % n]);
        let base = r - p;
        if base.cross(q - p).abs() / base.norm() <= tol {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialOutcome {
    /// Rejection attempts used; `None` when the trial was skipped.
    pub attempts: Option<usize>,
    /// Whether the six non-shared vertices were in strictly convex position.
    pub convex_position: bool,
}

impl TrialOutcome {
    pub fn accepted(&self) -> bool {
        self.attempts.is_some()
    }
}

/// The non-acute vertex with the largest interior angle, ties to the
/// earliest label.
pub fn shared_vertex(q: &CyclicQuad) -> Vertex {
    let angles = q.interior_angles();
    Vertex::ALL
        .into_iter()
        .fold(Vertex::A, |best, v| if angles[v.index()] > angles[best.index()] + 1e-12 { v } else { best })
}

/// One trial on `q`, sharing [`shared_vertex`].
pub fn lemma4_trial(q: &CyclicQuad, seed: u64) -> Result<TrialOutcome> {
    let shared = shared_vertex(q);
    if !q.is_nonacute(shared) {
        return Err(Error::InvalidQuad("quadrilateral has no non-acute vertex".into()));
    }
    lemma4_trial_points(&q.canonical_vertices(), shared.index(), seed)
}

/// One trial on an arbitrary quadrilateral `shape`, sharing vertex `shared`.
///
/// Two random drawings place `shape[shared]` at the origin. Pairs are
/// redrawn until the origin lies outside the hull of the other six points,
/// which are then tested for strictly convex position.
pub fn lemma4_trial_points(shape: &[Point; 4], shared: usize, seed: u64) -> Result<TrialOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let others: Vec<Point> = (0..4).filter(|&k| k != shared).map(|k| shape[k]).collect();
    let pivot = shape[shared];
    let draw = |rng: &mut ChaCha8Rng| {
        let scale = 10f64.powf(rng.gen_range(-1.0..=1.0));
        let rotation = rng.gen_range(0.0..TAU);
        let d = Drawing { scale, rotation, translation: Point::ORIGIN };
        let shift = d.apply(pivot);
        others.iter().map(move |&p| d.apply(p) - shift).collect::<Vec<_>>()
    };
    for attempt in 1..=MAX_ATTEMPTS {
        let mut six = draw(&mut rng);
        six.extend(draw(&mut rng));
        if !origin_outside(&six) {
            continue;
        }
        let convex_position = is_strictly_convex_position(&six)?;
        return Ok(TrialOutcome { attempts: Some(attempt), convex_position });
    }
    Ok(TrialOutcome { attempts: None, convex_position: false })
}

/// The origin is outside the hull iff some angular gap between the points
/// exceeds `π`.
fn origin_outside(points: &[Point]) -> bool {
    let mut angles: Vec<f64> = points.iter().map(|p| p.angle()).collect();
    angles.sort_by(f64::total_cmp);
    let wrap = angles[0] + TAU - angles[angles.len() - 1];
    angles.windows(2).map(|w| w[1] - w[0]).fold(wrap, f64::max) > PI
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialSummary {
    pub accepted: usize,
    pub skipped: usize,
    pub violations: usize,
    /// Seed of the first violating trial.
    pub first_violation: Option<u64>,
}

/// Run `count` trials with seeds `seed, seed + 1, …`.
pub fn run_trials<F>(count: usize, seed: u64, trial: F) -> Result<TrialSummary>
where
    F: Fn(u64) -> Result<TrialOutcome> + Sync,
{
    use rayon::prelude::*;
    let outcomes: Vec<TrialOutcome> =
        (0..count as u64).into_par_iter().map(|k| trial(seed.wrapping_add(k))).collect::<Result<_>>()?;
    let accepted = outcomes.iter().filter(|o| o.accepted()).count();
    let first_violation = outcomes.iter().position(|o| o.convex_position).map(|k| seed.wrapping_add(k as u64));
    Ok(TrialSummary {
        accepted,
        skipped: count - accepted,
        violations: outcomes.iter().filter(|o| o.convex_position).count(),
        first_violation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hexagon_and_friends() {
        let hex: Vec<Point> = (0..6).map(|k| Point::unit(TAU * k as f64 / 6.0)).collect();
        assert!(is_strictly_convex_position(&hex).unwrap());
        let mut inner = hex.clone();
        inner[5] = Point::new(0.1, 0.0);
        assert!(!is_strictly_convex_position(&inner).unwrap());
        let mut line = hex.clone();
        line[1] = Point::new(1.0, 0.5);
        line[2] = Point::new(1.0, 1.0);
        line[0] = Point::new(1.0, 0.0);
        assert!(!is_strictly_convex_position(&line).unwrap());
        let mut twin = hex.clone();
        twin[3] = twin[0];
        assert!(matches!(is_strictly_convex_position(&twin), Err(Error::CoincidentPoints(0, 3))));
    }

    #[test]
    fn square_trials_have_no_violations() {
        let s = run_trials(2000, 1, |seed| lemma4_trial(&CyclicQuad::square(), seed)).unwrap();
        assert_eq!(s.violations, 0);
        assert_eq!(s.accepted, 2000);
    }
}

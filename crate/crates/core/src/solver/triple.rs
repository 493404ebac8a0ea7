// SPDX-License-Identifier: Apache-2.0

//! The α-drawing with three vertices on the curve.
//!
//! For a fixed rotation α, the side joining two pinned vertices has a fixed
//! direction. Sliding that side as a chord of the curve across the slab of
//! the curve in the normal direction fixes scale and translation at every
//! offset. Near the far support line the drawing sticks out of the curve, and
//! near the near one it is small and stays inside; the remaining pinned vertex
//! therefore crosses the curve, and the crossing offset is bracketed and
//! refined.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::curve::ConvexCurve;
use crate::error::{Error, Result};
use crate::geom::Point;
use crate::quad::{CyclicQuad, Drawing, Vertex};
use crate::root::brent;

/// Default number of offsets in the unseeded sweep.
pub const DEFAULT_SWEEP: usize = 64;

/// Default residual bound, relative to the curve diameter.
pub const DEFAULT_TRIPLE_TOL: f64 = 1e-10;

/// Closest offset fraction to either end of the slab that is ever probed.
const EDGE_FRACTION: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TripleOptions {
    pub sweep: usize,
    /// Offset fraction of a nearby solution, used to bracket locally first.
    pub seed: Option<f64>,
    /// Residual bound relative to the curve diameter.
    pub tol: f64,
}

impl Default for TripleOptions {
    fn default() -> Self {
        TripleOptions { sweep: DEFAULT_SWEEP, seed: None, tol: DEFAULT_TRIPLE_TOL }
    }
}

impl TripleOptions {
    pub fn seeded(self, seed: Option<f64>) -> Self {
        TripleOptions { seed, ..self }
    }
}

/// An α-drawing with three vertices on the curve.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TripleSolution {
    pub alpha: f64,
    pub drawing: Drawing,
    /// The two chord vertices followed by the third pinned vertex.
    pub pinned: [Vertex; 3],
    pub free: Vertex,
    pub free_point: Point,
    /// Largest `|signed distance|` over the pinned vertices.
    pub residual: f64,
    /// Chord offset as a fraction of the slab, 0 at the near support line.
    pub offset_fraction: f64,
}

/// The chord side for a given free vertex: the earliest side in
/// `(a,b), (b,c), (c,d), (d,a)` order that does not touch it.
pub fn pinned_side(free: Vertex) -> (Vertex, Vertex) {
    Vertex::ALL
        .iter()
        .map(|&v| (v, v.next()))
        .find(|&(x, y)| x != free && y != free)
        .expect("two sides avoid any vertex")
}

/// The remaining pinned vertex for a free vertex.
pub fn third_vertex(free: Vertex) -> Vertex {
    let (x, y) = pinned_side(free);
    Vertex::ALL.into_iter().find(|&v| v != x && v != y && v != free).expect("four labels")
}

/// Drawings of `quad` at a fixed rotation whose side `x → y` is a chord.
pub(crate) struct SideSweep<'a> {
    curve: &'a ConvexCurve,
    quad: &'a CyclicQuad,
    side: (Vertex, Vertex),
    alpha: f64,
    direction: f64,
    lo: f64,
    hi: f64,
}

impl<'a> SideSweep<'a> {
    pub(crate) fn new(curve: &'a ConvexCurve, quad: &'a CyclicQuad, side: (Vertex, Vertex), alpha: f64) -> Self {
        let chord = quad.canonical(side.1) - quad.canonical(side.0);
        let direction = chord.angle() + alpha;
        // the rest of the quadrilateral lies to the left of x → y
        let (lo, hi) = curve.slab(direction + PI / 2.0);
        SideSweep { curve, quad, side, alpha, direction, lo, hi }
    }

    pub(crate) fn direction(&self) -> f64 {
        self.direction
    }

    pub(crate) fn offset(&self, fraction: f64) -> f64 {
        self.lo + fraction * (self.hi - self.lo)
    }

    /// The drawing whose chord side sits at the given slab fraction.
    pub(crate) fn drawing(&self, fraction: f64) -> Result<Drawing> {
        let chord = self.curve.chord_at_offset(self.direction, self.offset(fraction))?;
        let (px, py) = (self.quad.canonical(self.side.0), self.quad.canonical(self.side.1));
        let scale = chord.length() / px.distance(py);
        if !(scale > 0.0) {
            return Err(Error::DegenerateChord { offset: self.offset(fraction), lo: self.lo, hi: self.hi });
        }
        let translation = chord.start - px.rotate(self.alpha) * scale;
        Ok(Drawing { scale, rotation: self.alpha, translation })
    }

    /// Signed distance of vertex `v` in the drawing at `fraction`.
    pub(crate) fn distance_of(&self, v: Vertex, fraction: f64) -> Result<f64> {
        let d = self.drawing(fraction)?;
        Ok(self.curve.signed_distance(d.apply(self.quad.canonical(v))))
    }
}

/// The unique α-drawing of `quad` with every vertex except `free` on `curve`.
pub fn solve_inscribed_triple(
    curve: &ConvexCurve,
    quad: &CyclicQuad,
    free: Vertex,
    alpha: f64,
    opts: &TripleOptions,
) -> Result<TripleSolution> {
    let side = pinned_side(free);
    let third = third_vertex(free);
    let sweep = SideSweep::new(curve, quad, side, alpha);
    let g = |s: f64| sweep.distance_of(third, s);

    let bracket = match opts.seed {
        Some(seed) => local_bracket(&g, seed)?,
        None => None,
    };
    let mut probes = Vec::new();
    let ((s_lo, g_lo), (s_hi, g_hi)) = match bracket {
        Some(b) => b,
        None => match sweep_bracket(&g, opts.sweep.max(2), &mut probes)? {
            Some(b) => b,
            None => return Err(Error::TripleNotFound { alpha, free, sweep: probes }),
        },
    };

    let diameter = curve.diameter();
    let root = brent(&g, s_lo, s_hi, g_lo, g_hi, 1e-15, 1e-3 * opts.tol * diameter)?;
    let drawing = sweep.drawing(root.x)?;
    let residual = [side.0, side.1, third]
        .iter()
        .map(|&v| curve.signed_distance(drawing.apply(quad.canonical(v))).abs())
        .fold(0.0, f64::max);
    if residual > opts.tol * diameter {
        return Err(Error::TripleNotFound { alpha, free, sweep: vec![(root.x, root.fx)] });
    }
    Ok(TripleSolution {
        alpha,
        drawing,
        pinned: [side.0, side.1, third],
        free,
        free_point: drawing.apply(quad.canonical(free)),
        residual,
        offset_fraction: root.x,
    })
}

type Bracket = ((f64, f64), (f64, f64));

/// Grow a bracket outward from a seed fraction.
fn local_bracket<G>(g: &G, seed: f64) -> Result<Option<Bracket>>
where
    G: Fn(f64) -> Result<f64>,
{
    let seed = seed.clamp(EDGE_FRACTION, 1.0 - EDGE_FRACTION);
    let g0 = match g(seed) {
        Ok(v) => v,
        Err(Error::DegenerateChord { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    let upward = g0 < 0.0;
    let mut step = 1e-3;
    let (mut s_prev, mut g_prev) = (seed, g0);
    for _ in 0..16 {
        let s = if upward {
            (s_prev + step).min(1.0 - EDGE_FRACTION)
        } else {
            (s_prev - step).max(EDGE_FRACTION)
        };
        let gs = match g(s) {
            Ok(v) => v,
            Err(Error::DegenerateChord { .. }) => return Ok(None),
            Err(e) => return Err(e),
        };
        if upward && gs >= 0.0 {
            return Ok(Some(((s_prev, g_prev), (s, gs))));
        }
        if !upward && gs < 0.0 {
            return Ok(Some(((s, gs), (s_prev, g_prev))));
        }
        if s == s_prev {
            break;
        }
        s_prev = s;
        g_prev = gs;
        step *= 2.0;
    }
    Ok(None)
}

/// Scan the slab bottom to top for the first rise through zero.
fn sweep_bracket<G>(g: &G, m: usize, probes: &mut Vec<(f64, f64)>) -> Result<Option<Bracket>>
where
    G: Fn(f64) -> Result<f64>,
{
    let mut fractions = Vec::with_capacity(m + 2);
    fractions.push(EDGE_FRACTION);
    // Chebyshev spacing concentrates probes near the tangent ends
    fractions.extend((0..m).map(|i| 0.5 * (1.0 - (PI * (i as f64 + 0.5) / m as f64).cos())));
    fractions.push(1.0 - EDGE_FRACTION);

    let mut last: Option<(f64, f64)> = None;
    for s in fractions {
        let gs = match g(s) {
            Ok(v) => v,
            Err(Error::DegenerateChord { .. }) => continue,
            Err(e) => return Err(e),
        };
        probes.push((s, gs));
        if let Some((sp, gp)) = last {
            if gp < 0.0 && gs >= 0.0 {
                return Ok(Some(((sp, gp), (s, gs))));
            }
        }
        last = Some((s, gs));
    }
    Ok(None)
}

/// One row of a [`vertex_sweep`] report.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub offset: f64,
    /// Positions of `a, b, c, d`.
    pub vertices: [Point; 4],
    /// Signed distances of `c` and `d`.
    pub distances: [f64; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub direction: f64,
    /// Rows ordered by decreasing offset (top of the slab first).
    pub rows: Vec<SweepRow>,
    /// Offsets at which `c` and `d` first change sign as the offset decreases,
    /// linearly interpolated between rows.
    pub first_crossing: [Option<f64>; 2],
    /// Number of sign changes of `c` and `d` over the sweep.
    pub sign_changes: [usize; 2],
}

/// Slide side `ab` as a chord with the given direction across the slab and
/// track where `c` and `d` sit relative to the curve.
pub fn vertex_sweep(curve: &ConvexCurve, quad: &CyclicQuad, direction: f64, m: usize) -> Result<SweepReport> {
    if m < 8 {
        return Err(Error::TooFewSamples { got: m, min: 8 });
    }
    let canonical = quad.canonical(Vertex::B) - quad.canonical(Vertex::A);
    let alpha = direction - canonical.angle();
    let sweep = SideSweep::new(curve, quad, (Vertex::A, Vertex::B), alpha);
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        // top to bottom, interior points only
        let fraction = 1.0 - (i as f64 + 0.5) / m as f64;
        let drawing = match sweep.drawing(fraction) {
            Ok(d) => d,
            Err(Error::DegenerateChord { .. }) => continue,
            Err(e) => return Err(e),
        };
        let vertices = drawing.vertex_positions(quad);
        let distances = [curve.signed_distance(vertices[2]), curve.signed_distance(vertices[3])];
        rows.push(SweepRow { offset: sweep.offset(fraction), vertices, distances });
    }
    let mut first_crossing = [None, None];
    let mut sign_changes = [0, 0];
    for w in rows.windows(2) {
        for k in 0..2 {
            let (d0, d1) = (w[0].distances[k], w[1].distances[k]);
            if (d0 < 0.0) != (d1 < 0.0) {
                sign_changes[k] += 1;
                if first_crossing[k].is_none() {
                    let t = d0 / (d0 - d1);
                    first_crossing[k] = Some(w[0].offset + t * (w[1].offset - w[0].offset));
                }
            }
        }
    }
    Ok(SweepReport { direction: sweep.direction(), rows, first_crossing, sign_changes })
}

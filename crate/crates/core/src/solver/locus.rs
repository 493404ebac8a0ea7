// SPDX-License-Identifier: Apache-2.0

//! The locus `α ↦ d(α)` of the free vertex.

use std::f64::consts::TAU;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::triple::{solve_inscribed_triple, TripleOptions, TripleSolution};
use crate::curve::ConvexCurve;
use crate::error::{Error, Result};
use crate::geom::{periodic_curve_area, shoelace_area, Point};
use crate::quad::{CyclicQuad, Vertex};

pub const MIN_TRACE_SAMPLES: usize = 16;

/// Continuation runs over this many consecutive angles; each run starts from
/// a fresh sweep, so results do not depend on the thread count.
const CHUNK: usize = 64;

/// Jumps larger than this multiple of the median jump get a midpoint.
const JUMP_FACTOR: f64 = 10.0;
const REFINE_PASSES: usize = 4;

/// Closure tolerance relative to the curve diameter.
pub const CLOSURE_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocusTrace {
    pub free: Vertex,
    /// Solutions ordered by strictly increasing α in `[0, 2π)`.
    pub samples: Vec<TripleSolution>,
    pub closed: bool,
    /// Distance between the free point at α = 0 and at α = 2π.
    pub closure_gap: f64,
}

impl LocusTrace {
    pub fn free_points(&self) -> Vec<Point> {
        self.samples.iter().map(|s| s.free_point).collect()
    }

    /// Signed area enclosed by the sampled locus, counterclockwise positive.
    ///
    /// Traces with at least [`MIN_TRACE_SAMPLES`] samples are integrated as
    /// smooth curves in α; shorter ones are treated as polygons.
    pub fn area(&self) -> Result<f64> {
        if !self.closed {
            return Err(Error::OpenTrace { gap: self.closure_gap });
        }
        let points = self.free_points();
        if points.len() < MIN_TRACE_SAMPLES {
            return Ok(shoelace_area(&points));
        }
        let alphas: Vec<f64> = self.samples.iter().map(|s| s.alpha).collect();
        Ok(periodic_curve_area(&alphas, &points, TAU))
    }
}

/// Signed area of a closed locus trace.
pub fn locus_area(trace: &LocusTrace) -> Result<f64> {
    trace.area()
}

/// Solve the triple problem at every angle in `alphas` (ascending), using
/// continuation within fixed-size runs.
pub(crate) fn solve_alphas(
    curve: &ConvexCurve,
    quad: &CyclicQuad,
    free: Vertex,
    alphas: &[f64],
    opts: &TripleOptions,
) -> Result<Vec<TripleSolution>> {
    let runs: Vec<Result<Vec<TripleSolution>>> = alphas
        .par_chunks(CHUNK)
        .map(|run| {
            let mut out = Vec::with_capacity(run.len());
            let mut seed = None;
            for &alpha in run {
                let s = solve_seeded(curve, quad, free, alpha, opts, seed)?;
                seed = Some(s.offset_fraction);
                out.push(s);
            }
            Ok(out)
        })
        .collect();
    let mut all = Vec::with_capacity(alphas.len());
    for r in runs {
        all.extend(r?);
    }
    Ok(all)
}

/// Seeded solve that falls back to a full sweep, tagging failures with α.
pub(crate) fn solve_seeded(
    curve: &ConvexCurve,
    quad: &CyclicQuad,
    free: Vertex,
    alpha: f64,
    opts: &TripleOptions,
    seed: Option<f64>,
) -> Result<TripleSolution> {
    let attempt = solve_inscribed_triple(curve, quad, free, alpha, &opts.seeded(seed));
    let attempt = match attempt {
        Err(_) if seed.is_some() => solve_inscribed_triple(curve, quad, free, alpha, &opts.seeded(None)),
        other => other,
    };
    attempt.map_err(|e| Error::PartialTrace { alpha, source: Box::new(e) })
}

/// Trace `d(α)` at `n` equally spaced rotations, refining where the free
/// point jumps.
pub fn trace_locus(curve: &ConvexCurve, quad: &CyclicQuad, free: Vertex, n: usize) -> Result<LocusTrace> {
    trace_locus_with(curve, quad, free, n, &TripleOptions::default())
}

pub fn trace_locus_with(
    curve: &ConvexCurve,
    quad: &CyclicQuad,
    free: Vertex,
    n: usize,
    opts: &TripleOptions,
) -> Result<LocusTrace> {
    if n < MIN_TRACE_SAMPLES {
        return Err(Error::TooFewSamples { got: n, min: MIN_TRACE_SAMPLES });
    }
    let alphas: Vec<f64> = (0..n).map(|k| TAU * k as f64 / n as f64).collect();
    let mut samples = solve_alphas(curve, quad, free, &alphas, opts)?;

    let floor = 1e-13 * curve.diameter();
    for _ in 0..REFINE_PASSES {
        let m = samples.len();
        let jumps: Vec<f64> =
            (0..m).map(|k| samples[k].free_point.distance(samples[(k + 1) % m].free_point)).collect();
        let mut sorted = jumps.clone();
        sorted.sort_by(f64::total_cmp);
        let median = sorted[m / 2];
        let bound = (JUMP_FACTOR * median).max(floor);
        let wide: Vec<usize> = (0..m).filter(|&k| jumps[k] > bound).collect();
        if wide.is_empty() {
            break;
        }
        let mids: Vec<(usize, f64, f64)> = wide
            .iter()
            .map(|&k| {
                let a0 = samples[k].alpha;
                let a1 = if k + 1 == m { TAU } else { samples[k + 1].alpha };
                (k, 0.5 * (a0 + a1), samples[k].offset_fraction)
            })
            .collect();
        let solved: Vec<Result<TripleSolution>> = mids
            .par_iter()
            .map(|&(_, alpha, seed)| solve_seeded(curve, quad, free, alpha, opts, Some(seed)))
            .collect();
        let mut merged = Vec::with_capacity(m + mids.len());
        let mut inserts = mids.iter().zip(solved).peekable();
        for (k, s) in samples.into_iter().enumerate() {
            merged.push(s);
            if let Some(((i, _, _), _)) = inserts.peek() {
                if *i == k {
                    let (_, sol) = inserts.next().expect("peeked");
                    merged.push(sol?);
                }
            }
        }
        samples = merged;
    }

    let last = samples.last().expect("n >= 16");
    let wrap = solve_seeded(curve, quad, free, TAU, opts, Some(last.offset_fraction))?;
    let closure_gap = wrap.free_point.distance(samples[0].free_point);
    let closed = closure_gap <= CLOSURE_TOL * curve.diameter();
    Ok(LocusTrace { free, samples, closed, closure_gap })
}

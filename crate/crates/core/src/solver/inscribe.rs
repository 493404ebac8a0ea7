// SPDX-License-Identifier: Apache-2.0

//! Inscriptions as sign changes of `F(α) = signed_distance(d(α))`.

use std::f64::consts::TAU;

use log::{debug, info};
use serde::{Deserialize, Serialize};

use super::locus::{solve_alphas, solve_seeded};
use super::triple::{TripleOptions, TripleSolution, DEFAULT_SWEEP, DEFAULT_TRIPLE_TOL};
use crate::curve::ConvexCurve;
use crate::error::{Error, Result};
use crate::geom::Point;
use crate::quad::{CyclicQuad, Drawing, Vertex};
use crate::root::{brent, golden_max};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Found,
    NotFoundAtResolution,
    DegenerateLimit,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolverConfig {
    /// Initial number of α samples per free vertex.
    pub grid: usize,
    /// Unseeded sweep resolution of the triple solver.
    pub sweep: usize,
    /// Triple residual bound, relative to the diameter.
    pub triple_tol: f64,
    /// `|F|` at which the α refinement stops, relative to the diameter.
    pub root_tol: f64,
    /// Four-vertex residual bound for accepting an inscription, relative to the diameter.
    pub accept_tol: f64,
    /// Inscriptions with scale below this fraction of the diameter are degenerate.
    pub degeneracy: f64,
    /// Number of perturbation retries `ε_k = base · 2^k`.
    pub perturbation_retries: usize,
    pub perturbation_base: f64,
    pub perturbation_seed: u64,
    /// Try every free vertex even after one produced inscriptions.
    pub scan_all: bool,
    /// Use only this free vertex.
    pub free: Option<Vertex>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            grid: 720,
            sweep: DEFAULT_SWEEP,
            triple_tol: DEFAULT_TRIPLE_TOL,
            root_tol: 1e-10,
            accept_tol: 1e-8,
            degeneracy: 1e-6,
            perturbation_retries: 11,
            perturbation_base: 1e-6,
            perturbation_seed: 0,
            scan_all: true,
            free: None,
        }
    }
}

impl SolverConfig {
    fn triple_options(&self) -> TripleOptions {
        TripleOptions { sweep: self.sweep, seed: None, tol: self.triple_tol }
    }
}

/// One inscription found along the locus of `free`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    pub free: Vertex,
    pub alpha: f64,
    pub alpha_bracket: (f64, f64),
    pub drawing: Drawing,
    pub vertices: [Point; 4],
    /// Largest `|signed distance|` over all four vertices.
    pub residual: f64,
}

/// Samples of `F(α)` for one free vertex.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FProfile {
    pub free: Vertex,
    pub alphas: Vec<f64>,
    pub values: Vec<f64>,
    /// Why the profile is incomplete, if it is.
    pub error: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Perturbation {
    pub epsilon: f64,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InscriptionResult {
    pub status: Status,
    /// The primary inscription: the candidate with the largest scale.
    pub drawing: Option<Drawing>,
    pub vertices: Option<[Point; 4]>,
    pub residual: f64,
    pub free_vertex: Option<Vertex>,
    pub alpha_bracket: Option<(f64, f64)>,
    /// The quadrilateral actually inscribed (perturbed when a retry was needed).
    pub quad: CyclicQuad,
    pub perturbation: Option<Perturbation>,
    pub candidates: Vec<Candidate>,
    pub profiles: Vec<FProfile>,
}

impl InscriptionResult {
    pub fn is_found(&self) -> bool {
        self.status == Status::Found
    }

    fn from_candidates(quad: CyclicQuad, candidates: Vec<Candidate>, profiles: Vec<FProfile>, status: Status) -> Self {
        let primary = candidates
            .iter()
            .max_by(|a, b| a.drawing.scale.total_cmp(&b.drawing.scale))
            .cloned();
        InscriptionResult {
            status,
            drawing: primary.as_ref().map(|c| c.drawing),
            vertices: primary.as_ref().map(|c| c.vertices),
            residual: primary.as_ref().map_or(f64::INFINITY, |c| c.residual),
            free_vertex: primary.as_ref().map(|c| c.free),
            alpha_bracket: primary.as_ref().map(|c| c.alpha_bracket),
            quad,
            perturbation: None,
            candidates,
            profiles,
        }
    }
}

/// Largest `|signed distance|` of the four vertices of `quad` under `drawing`.
pub fn drawing_residual(curve: &ConvexCurve, quad: &CyclicQuad, drawing: &Drawing) -> f64 {
    drawing
        .vertex_positions(quad)
        .iter()
        .map(|&p| curve.signed_distance(p).abs())
        .fold(0.0, f64::max)
}

/// Inscribe `quad` in `curve` with the default configuration.
pub fn inscribe(curve: &ConvexCurve, quad: &CyclicQuad) -> Result<InscriptionResult> {
    inscribe_with(curve, quad, &SolverConfig::default())
}

/// Inscribe `quad` in `curve`, retrying with perturbed copies of `quad` when
/// the unperturbed quadrilateral yields nothing.
pub fn inscribe_with(curve: &ConvexCurve, quad: &CyclicQuad, cfg: &SolverConfig) -> Result<InscriptionResult> {
    let first = attempt(curve, quad, cfg);
    if first.is_found() {
        return Ok(first);
    }
    for k in 0..cfg.perturbation_retries {
        let epsilon = cfg.perturbation_base * 2f64.powi(k as i32);
        let seed = cfg.perturbation_seed.wrapping_add(k as u64);
        let perturbed = match quad.perturb(epsilon, seed) {
            Ok(q) => q,
            Err(Error::PerturbationTooLarge { .. }) => break,
            Err(e) => return Err(e),
        };
        debug!("retrying with perturbation epsilon = {epsilon:e}");
        let mut r = attempt(curve, &perturbed, cfg);
        if r.is_found() {
            info!("inscribed after perturbing the quadrilateral by {epsilon:e}");
            r.perturbation = Some(Perturbation { epsilon, seed });
            return Ok(r);
        }
    }
    Ok(first)
}

fn attempt(curve: &ConvexCurve, quad: &CyclicQuad, cfg: &SolverConfig) -> InscriptionResult {
    let diameter = curve.diameter();
    let mut candidates = Vec::new();
    let mut degenerate = Vec::new();
    let mut profiles = Vec::new();
    let order = quad.free_vertex_order();
    let only = cfg.free.map(|v| [v]);
    for &free in only.as_ref().map_or(&order[..], |v| &v[..]) {
        let (profile, found) = scan_vertex(curve, quad, free, cfg);
        profiles.push(profile);
        for c in found {
            if c.residual > cfg.accept_tol * diameter {
                debug!("rejecting candidate with residual {:e}", c.residual);
            } else if c.drawing.scale <= cfg.degeneracy * diameter {
                degenerate.push(c);
            } else {
                candidates.push(c);
            }
        }
        if !cfg.scan_all && !candidates.is_empty() {
            break;
        }
    }
    if !candidates.is_empty() {
        InscriptionResult::from_candidates(*quad, candidates, profiles, Status::Found)
    } else if !degenerate.is_empty() {
        InscriptionResult::from_candidates(*quad, degenerate, profiles, Status::DegenerateLimit)
    } else {
        InscriptionResult::from_candidates(*quad, Vec::new(), profiles, Status::NotFoundAtResolution)
    }
}

/// Sample `F` for one free vertex and refine every sign change.
fn scan_vertex(curve: &ConvexCurve, quad: &CyclicQuad, free: Vertex, cfg: &SolverConfig) -> (FProfile, Vec<Candidate>) {
    let opts = cfg.triple_options();
    let diameter = curve.diameter();
    let alphas: Vec<f64> = (0..cfg.grid).map(|k| TAU * k as f64 / cfg.grid as f64).collect();
    let mut sols = match solve_alphas(curve, quad, free, &alphas, &opts) {
        Ok(s) => s,
        Err(e) => {
            let profile = FProfile { free, alphas, values: Vec::new(), error: Some(e.to_string()) };
            return (profile, Vec::new());
        }
    };
    let mut values: Vec<f64> = sols.iter().map(|s| curve.signed_distance(s.free_point)).collect();
    if let Err(e) = refine_grid(curve, quad, free, &opts, &mut sols, &mut values) {
        let profile = FProfile { free, alphas, values, error: Some(e.to_string()) };
        return (profile, Vec::new());
    }
    let profile = FProfile { free, alphas: sols.iter().map(|s| s.alpha).collect(), values: values.clone(), error: None };

    let tol = cfg.root_tol * diameter;
    let mut found = Vec::new();
    if values.iter().all(|v| v.abs() <= tol) {
        // the locus coincides with the curve; every rotation inscribes
        found.push(candidate(curve, quad, &sols[0], (sols[0].alpha, sols[0].alpha)));
        return (profile, found);
    }

    let m = sols.len();
    let f_at = |alpha: f64, seed: f64| -> Result<(f64, TripleSolution)> {
        let s = solve_seeded(curve, quad, free, alpha, &opts, Some(seed))?;
        Ok((curve.signed_distance(s.free_point), s))
    };
    for k in 0..m {
        let (f0, f1) = (values[k], values[(k + 1) % m]);
        let a0 = sols[k].alpha;
        let a1 = if k + 1 == m { TAU } else { sols[k + 1].alpha };
        if f0 == 0.0 {
            found.push(candidate(curve, quad, &sols[k], (a0, a0)));
            continue;
        }
        if f0.signum() == f1.signum() || f1 == 0.0 {
            continue;
        }
        let seed = sols[k].offset_fraction;
        let root = brent(|a| f_at(a, seed).map(|r| r.0), a0, a1, f0, f1, 1e-15, tol);
        match root.and_then(|r| f_at(r.x, seed)) {
            Ok((_, sol)) => found.push(candidate(curve, quad, &sol, (a0, a1))),
            Err(e) => debug!("refinement on [{a0}, {a1}] for {free} failed: {e}"),
        }
    }

    if found.is_empty() {
        // a tangential touch shows up as a near-zero extremum instead of a sign change
        let k = (0..m).min_by(|&i, &j| values[i].abs().total_cmp(&values[j].abs())).expect("non-empty");
        let a0 = sols[(k + m - 1) % m].alpha;
        let a0 = if k == 0 { a0 - TAU } else { a0 };
        let a1 = if k + 1 == m { TAU } else { sols[k + 1].alpha };
        let seed = sols[k].offset_fraction;
        let best = golden_max(|a| f_at(a, seed).map(|r| -r.0.abs()), a0, a1, 1e-14);
        if let Ok((a, neg)) = best {
            if -neg <= tol {
                if let Ok((_, sol)) = f_at(a, seed) {
                    found.push(candidate(curve, quad, &sol, (a0, a1)));
                }
            }
        }
    }
    (profile, found)
}

/// Insert midpoints where `F` changes much faster than typical.
fn refine_grid(
    curve: &ConvexCurve,
    quad: &CyclicQuad,
    free: Vertex,
    opts: &TripleOptions,
    sols: &mut Vec<TripleSolution>,
    values: &mut Vec<f64>,
) -> Result<()> {
    for _ in 0..3 {
        let m = sols.len();
        let deltas: Vec<f64> = (0..m).map(|k| (values[(k + 1) % m] - values[k]).abs()).collect();
        let mut sorted = deltas.clone();
        sorted.sort_by(f64::total_cmp);
        let bound = 10.0 * sorted[m / 2];
        let wide: Vec<usize> = (0..m).filter(|&k| deltas[k] > bound && bound > 0.0).collect();
        if wide.is_empty() {
            return Ok(());
        }
        let mut new_sols = Vec::with_capacity(m + wide.len());
        let mut new_vals = Vec::with_capacity(m + wide.len());
        let mut w = wide.iter().peekable();
        for k in 0..m {
            new_sols.push(sols[k]);
            new_vals.push(values[k]);
            if w.peek() == Some(&&k) {
                w.next();
                let a1 = if k + 1 == m { TAU } else { sols[k + 1].alpha };
                let mid = 0.5 * (sols[k].alpha + a1);
                let s = solve_seeded(curve, quad, free, mid, opts, Some(sols[k].offset_fraction))?;
                new_vals.push(curve.signed_distance(s.free_point));
                new_sols.push(s);
            }
        }
        *sols = new_sols;
        *values = new_vals;
    }
    Ok(())
}

fn candidate(curve: &ConvexCurve, quad: &CyclicQuad, sol: &TripleSolution, bracket: (f64, f64)) -> Candidate {
    Candidate {
        free: sol.free,
        alpha: sol.alpha,
        alpha_bracket: bracket,
        drawing: sol.drawing,
        vertices: sol.drawing.vertex_positions(quad),
        residual: drawing_residual(curve, quad, &sol.drawing),
    }
}

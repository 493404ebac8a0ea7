// SPDX-License-Identifier: Apache-2.0

//! Named verification suites with machine-readable reports.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use log::info;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{brute_force_inscribe, check_area_identity, lemma4_trial, lemma4_trial_points, run_trials, BruteForceOptions};
use crate::approx::{inscribe_limit, ApproximationSchedule};
use crate::curve::{ConvexCurve, ConvexPolygon};
use crate::error::{Error, Result};
use crate::geom::Point;
use crate::quad::{CyclicQuad, Vertex};
use crate::solver::{inscribe_with, SolverConfig, Status};

/// Smallest arc between consecutive vertices of random quadrilaterals.
pub const RANDOM_QUAD_GAP: f64 = 0.25;
/// Smallest admissible kite scale in the thin-triangle search, relative to
/// the triangle's diameter.
pub const FIGURE1_MIN_SCALE: f64 = 0.1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    AreaIdentity,
    Lemma4,
    OracleAgreement,
    Figure1,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::AreaIdentity, Suite::Lemma4, Suite::OracleAgreement, Suite::Figure1];

    pub fn name(self) -> &'static str {
        match self {
            Suite::AreaIdentity => "area-identity",
            Suite::Lemma4 => "lemma4",
            Suite::OracleAgreement => "oracle-agreement",
            Suite::Figure1 => "figure1",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::spec("suite", format!("unknown suite {s:?}; expected one of area-identity, lemma4, oracle-agreement, figure1")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub pass: bool,
    pub metrics: BTreeMap<String, f64>,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(suite: Suite, seed: u64) -> Self {
        SuiteReport { suite, seed, pass: true, metrics: BTreeMap::new(), failures: Vec::new() }
    }

    fn metric(&mut self, key: &str, value: f64) {
        self.metrics.insert(key.to_string(), value);
    }

    fn check(&mut self, ok: bool, message: impl FnOnce() -> String) {
        if !ok {
            self.pass = false;
            self.failures.push(message());
        }
    }
}

/// Sizes of the randomized suites.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Locus samples for the area identity.
    pub samples: usize,
    /// Random quadrilaterals for the area identity.
    pub quads: usize,
    /// Accepted trials on cyclic quadrilaterals.
    pub trials: usize,
    /// Trial budget for each relaxed hypothesis.
    pub relaxed_trials: usize,
    pub grid: usize,
}

impl SuiteOptions {
    pub fn new(seed: u64) -> Self {
        SuiteOptions { seed, samples: 4096, quads: 10, trials: 100_000, relaxed_trials: 10_000, grid: 2000 }
    }
}

/// Non-cyclic quadrilateral with an obtuse angle at vertex 0.
pub const NONCYCLIC_SHAPE: [Point; 4] =
    [Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.33, 1.03), Point::new(-0.73, 0.75)];

pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> Result<SuiteReport> {
    info!("running suite {suite} with seed {}", opts.seed);
    match suite {
        Suite::AreaIdentity => area_identity_suite(opts),
        Suite::Lemma4 => lemma4_suite(opts),
        Suite::OracleAgreement => oracle_agreement_suite(opts),
        Suite::Figure1 => figure1_suite(opts),
    }
}

/// Locus area against curve area on the unit circle and on the ellipse
/// with semi-axes 2 and 1, for random quadrilaterals and every free vertex.
pub fn area_identity_suite(opts: &SuiteOptions) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::AreaIdentity, opts.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let circle = check_area_identity(&ConvexCurve::unit_circle(), &CyclicQuad::square(), Vertex::D, opts.samples)?;
    report.metric("circle_deviation", circle.deviation);
    report.check(circle.deviation < 1e-9, || format!("circle deviation {:e}", circle.deviation));
    let ellipse = ConvexCurve::ellipse(2.0, 1.0)?;
    let mut worst: f64 = 0.0;
    for k in 0..opts.quads {
        let q = CyclicQuad::random(&mut rng, RANDOM_QUAD_GAP);
        for free in Vertex::ALL {
            let r = check_area_identity(&ellipse, &q, free, opts.samples)?;
            worst = worst.max(r.deviation);
            report.check(r.deviation < 1e-4, || format!("quad {k} free {free}: deviation {:e}", r.deviation));
        }
    }
    report.metric("max_deviation", worst);
    report.metric("traces", (4 * opts.quads) as f64);
    Ok(report)
}

/// Random pairs of drawings sharing a vertex: no six-point convex position
/// for cyclic quadrilaterals sharing a non-acute vertex, and counterexamples
/// once either hypothesis is dropped.
pub fn lemma4_suite(opts: &SuiteOptions) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Lemma4, opts.seed);
    let cyclic = run_trials(opts.trials, opts.seed, |seed| {
        let q = CyclicQuad::random(&mut ChaCha8Rng::seed_from_u64(seed ^ 0x5eed), RANDOM_QUAD_GAP);
        lemma4_trial(&q, seed)
    })?;
    report.metric("accepted", cyclic.accepted as f64);
    report.metric("skipped", cyclic.skipped as f64);
    report.metric("violations", cyclic.violations as f64);
    report.check(cyclic.violations == 0, || format!("{} violations, first at seed {:?}", cyclic.violations, cyclic.first_violation));

    let noncyclic = run_trials(opts.relaxed_trials, opts.seed, |seed| lemma4_trial_points(&NONCYCLIC_SHAPE, 0, seed))?;
    let kite = CyclicQuad::kite();
    let acute = Vertex::D;
    let acute_trials = run_trials(opts.relaxed_trials, opts.seed, |seed| lemma4_trial_points(&kite.canonical_vertices(), acute.index(), seed))?;
    report.metric("noncyclic_violations", noncyclic.violations as f64);
    report.metric("acute_violations", acute_trials.violations as f64);
    report.check(noncyclic.violations > 0, || "no counterexample for the non-cyclic relaxation".into());
    report.check(acute_trials.violations > 0, || "no counterexample for the acute relaxation".into());
    Ok(report)
}

/// Solver inscriptions against the brute-force placement search.
pub fn oracle_agreement_suite(opts: &SuiteOptions) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::OracleAgreement, opts.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut cases = vec![("ellipse-square".to_string(), ConvexCurve::ellipse(2.0, 1.0)?, CyclicQuad::square())];
    for k in 0..2 {
        cases.push((format!("ellipse-random-{k}"), ConvexCurve::ellipse(1.5, 1.0)?, CyclicQuad::random(&mut rng, RANDOM_QUAD_GAP)));
    }
    let mut worst_residual: f64 = 0.0;
    let mut worst_gap: f64 = 0.0;
    for (name, curve, q) in cases {
        let result = inscribe_with(&curve, &q, &SolverConfig::default())?;
        report.check(result.is_found(), || format!("{name}: solver found nothing"));
        if !result.is_found() {
            continue;
        }
        let q = result.quad;
        let brute = brute_force_inscribe(&curve.sample_by_arclength(opts.grid), &q, &BruteForceOptions::new(opts.grid));
        let Some(best) = brute.best else {
            report.check(false, || format!("{name}: brute force found no placement"));
            continue;
        };
        let bound = 10.0 * brute.spacing;
        let gap = result
            .candidates
            .iter()
            .map(|c| c.drawing.distance(&best.drawing, c.drawing.scale))
            .fold(f64::INFINITY, f64::min);
        worst_residual = worst_residual.max(best.residual / brute.spacing);
        worst_gap = worst_gap.max(gap / brute.spacing);
        report.check(best.residual <= bound, || format!("{name}: brute-force residual {:e} above {bound:e}", best.residual));
        report.check(gap <= bound, || format!("{name}: nearest solver drawing is {gap:e} away, above {bound:e}"));
    }
    report.metric("max_residual_in_spacings", worst_residual);
    report.metric("max_gap_in_spacings", worst_gap);
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Figure1Floor {
    pub grid: usize,
    pub residual: f64,
    pub scale: f64,
}

/// Residual floor of the kite in the thin triangle at one grid size.
pub fn figure1_floor(grid: usize) -> Figure1Floor {
    let tri = ConvexPolygon::thin_triangle();
    let mut o = BruteForceOptions::new(grid);
    o.min_scale = FIGURE1_MIN_SCALE * tri.diameter();
    let r = brute_force_inscribe(&tri.sample_boundary(grid), &CyclicQuad::kite(), &o);
    let best = r.best.expect("the triangle admits placements");
    Figure1Floor { grid, residual: best.residual, scale: best.drawing.scale }
}

/// The kite against the thin triangle: a stable positive residual floor for
/// non-degenerate placements and no limit inscription.
pub fn figure1_suite(opts: &SuiteOptions) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Figure1, opts.seed);
    let coarse = figure1_floor(opts.grid / 2);
    let fine = figure1_floor(opts.grid);
    let change = (fine.residual - coarse.residual).abs() / coarse.residual;
    report.metric("c0_coarse", coarse.residual);
    report.metric("c0_fine", fine.residual);
    report.metric("relative_change", change);
    report.check(fine.residual > 0.0, || "residual floor vanished".into());
    report.check(change < 0.2, || format!("residual floor moved by {:.1}% under grid doubling", 100.0 * change));

    let tri = ConvexPolygon::thin_triangle();
    let limit = inscribe_limit(&tri, &CyclicQuad::kite(), &ApproximationSchedule::for_diameter(tri.diameter()), &SolverConfig::default())?;
    report.metric("limit_steps", limit.steps.len() as f64);
    report.metric(
        "limit_status",
        match limit.result.status {
            Status::Found => 0.0,
            Status::NotFoundAtResolution => 2.0,
            Status::DegenerateLimit => 3.0,
        },
    );
    report.check(limit.result.status != Status::Found, || "the limit driver reported an inscription".into());
    Ok(report)
}

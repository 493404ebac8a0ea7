// SPDX-License-Identifier: Apache-2.0

//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::f64::consts::TAU;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use quadpeg::approx::{inscribe_limit, smooth_polygon, ApproximationSchedule};
use quadpeg::quad::{CyclicQuad, Drawing, Vertex};
use quadpeg::solver::{inscribe, solve_inscribed_triple, trace_locus, SolverConfig, Status, TripleOptions};
use quadpeg::verify::{
    brute_force_inscribe, figure1_floor, lemma4_trial, lemma4_trial_points, run_trials, BruteForceOptions,
    NONCYCLIC_SHAPE, RANDOM_QUAD_GAP,
};
use quadpeg::{ConvexCurve, ConvexPolygon, Point};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn run(id: usize, name: &str, f: fn() -> Outcome) -> bool {
    let t0 = Instant::now();
    let out = f();
    let verdict = if out.pass { "PASS" } else { "FAIL" };
    println!("[{verdict}] criterion {id} {name}: {} ({:.1} s)", out.detail, t0.elapsed().as_secs_f64());
    out.pass
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn circle_identity() -> Outcome {
    let t0 = Instant::now();
    let circle = ConvexCurve::unit_circle();
    let mut rng = rng(1);
    let (mut worst_sd, mut worst_scale): (f64, f64) = (0.0, 0.0);
    let mut failures = 0;
    for _ in 0..20 {
        let q = CyclicQuad::random(&mut rng, RANDOM_QUAD_GAP);
        for free in Vertex::ALL {
            match trace_locus(&circle, &q, free, 360) {
                Ok(trace) => {
                    for s in &trace.samples {
                        worst_sd = worst_sd.max(circle.signed_distance(s.free_point).abs());
                        worst_scale = worst_scale.max((s.drawing.scale - 1.0).abs());
                    }
                }
                Err(_) => failures += 1,
            }
        }
    }
    let elapsed = t0.elapsed();
    Outcome {
        pass: failures == 0 && worst_sd < 1e-8 && worst_scale < 1e-10 && elapsed < Duration::from_secs(5),
        detail: format!(
            "max |sd| = {worst_sd:.2e} (< 1e-8), max |scale - 1| = {worst_scale:.2e} (< 1e-10), {failures} trace failures, runtime < 5 s"
        ),
    }
}

fn area_identity() -> Outcome {
    let t0 = Instant::now();
    let ellipse = ConvexCurve::ellipse(2.0, 1.0).unwrap();
    let mut rng = rng(2);
    let mut worst: f64 = 0.0;
    let mut failures = 0;
    for _ in 0..10 {
        let q = CyclicQuad::random(&mut rng, RANDOM_QUAD_GAP);
        for free in Vertex::ALL {
            match trace_locus(&ellipse, &q, free, 4096).and_then(|t| t.area()) {
                Ok(a) => worst = worst.max((a - TAU).abs()),
                Err(_) => failures += 1,
            }
        }
    }
    let elapsed = t0.elapsed();
    Outcome {
        pass: failures == 0 && worst < 1e-4 && elapsed < Duration::from_secs(60),
        detail: format!("40 loci at n = 4096, max |area - 2π| = {worst:.2e} (< 1e-4), {failures} trace failures, runtime < 60 s"),
    }
}

fn inscription_correctness() -> Outcome {
    let ellipse = ConvexCurve::ellipse(2.0, 1.0).unwrap();
    let r = inscribe(&ellipse, &CyclicQuad::square()).unwrap();
    let s = 2.0 / 5f64.sqrt();
    let expected = [Point::new(s, s), Point::new(-s, s), Point::new(-s, -s), Point::new(s, -s)];
    let err = r.vertices.map_or(f64::INFINITY, |v| {
        v.iter()
            .map(|p| expected.iter().map(|e| p.distance(*e)).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    });
    let bound = 1e-8 * ellipse.diameter();
    Outcome {
        pass: r.status == Status::Found && err < 1e-6 && r.residual <= bound,
        detail: format!(
            "status {:?}, vertex error vs (±2/√5, ±2/√5) = {err:.2e} (< 1e-6), residual = {:.2e} (<= {bound:.1e})",
            r.status, r.residual
        ),
    }
}

fn rectangle_in_square() -> Outcome {
    let square = ConvexPolygon::unit_square();
    let q = CyclicQuad::rectangle(2.0).unwrap();
    let diameter = square.diameter();
    let limit = inscribe_limit(&square, &q, &ApproximationSchedule::for_diameter(diameter), &SolverConfig::default()).unwrap();
    let r = &limit.result;
    let Some(drawing) = r.drawing else {
        return Outcome { pass: false, detail: format!("status {:?} without a drawing", r.status) };
    };
    let boundary = square.sample_boundary(2000);
    let global = brute_force_inscribe(&boundary, &q, &BruteForceOptions::new(2000));
    let bound = 10.0 * global.spacing;
    let global_residual = global.best.map_or(f64::INFINITY, |b| b.residual);
    let mut near = BruteForceOptions::new(2000);
    near.near = Some((drawing, bound));
    let local = brute_force_inscribe(&boundary, &q, &near);
    let (local_residual, gap) = local
        .best
        .map_or((f64::INFINITY, f64::INFINITY), |b| (b.residual, b.drawing.distance(&drawing, drawing.scale)));
    let pass = r.status == Status::Found
        && drawing.scale > 1e-3 * diameter
        && r.residual <= 1e-4
        && global_residual <= bound
        && local_residual <= bound
        && gap <= bound;
    Outcome {
        pass,
        detail: format!(
            "status {:?} after {} steps, scale = {:.6} (> {:.1e}), residual vs square = {:.2e} (<= 1e-4), \
             brute force: best residual {global_residual:.1e}, placement near the solver drawing: residual {local_residual:.1e} at distance {gap:.1e}, both <= {bound:.1e}",
            r.status,
            limit.steps.len(),
            drawing.scale,
            1e-3 * diameter,
            r.residual
        ),
    }
}

fn figure1_nonexistence() -> Outcome {
    let coarse = figure1_floor(1000);
    let fine = figure1_floor(2000);
    let change = (fine.residual - coarse.residual).abs() / coarse.residual;
    let tri = ConvexPolygon::thin_triangle();
    let limit = inscribe_limit(
        &tri,
        &CyclicQuad::kite(),
        &ApproximationSchedule::for_diameter(tri.diameter()),
        &SolverConfig::default(),
    )
    .unwrap();
    let status = limit.result.status;
    Outcome {
        pass: fine.residual > 0.0 && change < 0.2 && status != Status::Found,
        detail: format!(
            "c0 = {:.4e} (grid 1000), {:.4e} (grid 2000), change {:.1}% (< 20%); limit status {status:?} after {} steps",
            coarse.residual,
            fine.residual,
            100.0 * change,
            limit.steps.len()
        ),
    }
}

fn lemma4_suite() -> Outcome {
    let t0 = Instant::now();
    let cyclic = run_trials(100_000, 6, |seed| {
        let q = CyclicQuad::random(&mut rng(seed ^ 0x5eed), RANDOM_QUAD_GAP);
        lemma4_trial(&q, seed)
    })
    .unwrap();
    let noncyclic = run_trials(10_000, 6, |seed| lemma4_trial_points(&NONCYCLIC_SHAPE, 0, seed)).unwrap();
    let kite = CyclicQuad::kite().canonical_vertices();
    let acute = run_trials(10_000, 6, |seed| lemma4_trial_points(&kite, Vertex::D.index(), seed)).unwrap();
    let elapsed = t0.elapsed();
    Outcome {
        pass: cyclic.accepted == 100_000
            && cyclic.violations == 0
            && noncyclic.violations > 0
            && acute.violations > 0
            && elapsed < Duration::from_secs(30),
        detail: format!(
            "{} accepted cyclic trials, {} violations (= 0); non-cyclic: {} violations, first at trial {:?}; \
             acute shared vertex: {} violations, first at trial {:?}; runtime < 30 s",
            cyclic.accepted,
            cyclic.violations,
            noncyclic.violations,
            noncyclic.first_violation.map(|s| s - 6),
            acute.violations,
            acute.first_violation.map(|s| s - 6)
        ),
    }
}

fn relative_gap(a: &Drawing, b: &Drawing, diameter: f64) -> f64 {
    let scale = (a.scale - b.scale).abs() / a.scale;
    let shift = a.translation.distance(b.translation) / diameter;
    let rot = (a.rotation - b.rotation).abs();
    scale.max(shift).max(rot)
}

fn uniqueness() -> Outcome {
    let mut rng = rng(7);
    let mut worst: f64 = 0.0;
    let mut failures = 0;
    for k in 0..100 {
        let curve = if k % 2 == 0 {
            let a = rng.gen_range(1.0..3.0);
            let b = rng.gen_range(0.5..1.5);
            let rot = rng.gen_range(0.0..TAU);
            ConvexCurve::ellipse_with(a, b, Point::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)), rot).unwrap()
        } else {
            let poly = ConvexPolygon::random(&mut rng, 10);
            smooth_polygon(&poly, 0.05 * poly.diameter()).unwrap()
        };
        let q = CyclicQuad::random(&mut rng, RANDOM_QUAD_GAP);
        let free = Vertex::from_index(rng.gen_range(0..4));
        let alpha = rng.gen_range(0.0..TAU);
        let coarse = TripleOptions { sweep: 64, ..TripleOptions::default() };
        let fine = TripleOptions { sweep: 257, ..TripleOptions::default() };
        match (
            solve_inscribed_triple(&curve, &q, free, alpha, &coarse),
            solve_inscribed_triple(&curve, &q, free, alpha, &fine),
        ) {
            (Ok(a), Ok(b)) => worst = worst.max(relative_gap(&a.drawing, &b.drawing, curve.diameter())),
            _ => failures += 1,
        }
    }
    Outcome {
        pass: failures == 0 && worst <= 1e-8,
        detail: format!("100 instances, sweeps of 64 and 257 rows, max relative drawing gap = {worst:.2e} (<= 1e-8), {failures} failures"),
    }
}

fn random_corpus() -> Outcome {
    let mut rng = rng(8);
    let (mut found, mut total, mut perturbed) = (0, 0, 0);
    for p in 0..50 {
        let poly = ConvexPolygon::random(&mut rng, 10);
        let curve = smooth_polygon(&poly, 0.05 * poly.diameter()).unwrap();
        for k in 0..5 {
            let q = CyclicQuad::random(&mut rng, RANDOM_QUAD_GAP);
            total += 1;
            let r = match inscribe(&curve, &q) {
                Ok(r) => r,
                Err(e) => {
                    println!("    polygon {p} quad {k}: error {e}");
                    continue;
                }
            };
            if r.perturbation.is_some() {
                perturbed += 1;
            }
            if r.status == Status::Found && r.residual <= 1e-6 * curve.diameter() {
                found += 1;
            } else {
                println!("    polygon {p} quad {k}: status {:?}, residual {:.2e}", r.status, r.residual);
                for f in &r.profiles {
                    let lo = f.values.iter().copied().fold(f64::INFINITY, f64::min);
                    let hi = f.values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                    println!(
                        "      free {}: {} samples, F in [{lo:.3e}, {hi:.3e}]{}",
                        f.free,
                        f.values.len(),
                        f.error.as_ref().map_or(String::new(), |e| format!(", {e}"))
                    );
                }
            }
        }
    }
    let rate = found as f64 / total as f64;
    Outcome {
        pass: rate >= 0.95,
        detail: format!("{found}/{total} found with residual <= 1e-6 × diameter ({:.1}% >= 95%), {perturbed} after perturbation", 100.0 * rate),
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("circle identity", circle_identity),
        ("area identity", area_identity),
        ("inscription correctness", inscription_correctness),
        ("rectangle in square", rectangle_in_square),
        ("thin-triangle non-existence", figure1_nonexistence),
        ("shared-vertex convex position", lemma4_suite),
        ("triple uniqueness", uniqueness),
        ("random convex corpus", random_corpus),
    ];
    let mut passed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        if run(k + 1, name, *f) {
            passed += 1;
        }
    }
    println!("acceptance: {passed}/{} criteria passed", criteria.len());
    if passed == criteria.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

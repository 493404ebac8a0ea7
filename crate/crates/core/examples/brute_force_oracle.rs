// SPDX-License-Identifier: Apache-2.0

// Exhaustive grid search for a square on a sampled circle, checked against
// the solver.

use quadpeg::quad::CyclicQuad;
use quadpeg::solver::inscribe;
use quadpeg::verify::{brute_force_inscribe, circle_boundary, BruteForceOptions, BruteForceReport};
use quadpeg::{ConvexCurve, Result};

/// The brute-force report and the solver's scale.
pub fn run_example() -> Result<(BruteForceReport, f64)> {
    let quad = CyclicQuad::square();
    let report = brute_force_inscribe(&circle_boundary(1.0, 800), &quad, &BruteForceOptions::new(800));
    let solved = inscribe(&ConvexCurve::unit_circle(), &quad)?;
    Ok((report, solved.drawing.map_or(f64::NAN, |d| d.scale)))
}

#[allow(dead_code)]
fn main() -> Result<()> {
    let (report, scale) = run_example()?;
    if let Some(best) = report.best {
        println!(
            "grid spacing {:.2e}: best residual {:.2e} at scale {:.6}; solver scale {scale:.6}",
            report.spacing, best.residual, best.drawing.scale
        );
    }
    Ok(())
}

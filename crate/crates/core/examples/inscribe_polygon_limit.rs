// SPDX-License-Identifier: Apache-2.0

// Inscribe a 2:1 rectangle in the unit square by solving on shrinking
// smooth approximations and extrapolating.

use quadpeg::approx::{inscribe_limit, ApproximationSchedule, LimitResult};
use quadpeg::quad::CyclicQuad;
use quadpeg::solver::SolverConfig;
use quadpeg::{ConvexPolygon, Result};

pub fn run_example() -> Result<LimitResult> {
    let square = ConvexPolygon::unit_square();
    let sched = ApproximationSchedule::for_diameter(square.diameter());
    inscribe_limit(&square, &CyclicQuad::rectangle(2.0)?, &sched, &SolverConfig::default())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    let limit = run_example()?;
    for s in &limit.steps {
        let residual = s.polygon_residual.map_or("-".into(), |x| format!("{x:.2e}"));
        println!("r = {:.5}: {:?}, polygon residual {residual}", s.radius, s.status);
    }
    let r = &limit.result;
    println!("{:?}: {:?}", r.status, r.drawing);
    Ok(())
}

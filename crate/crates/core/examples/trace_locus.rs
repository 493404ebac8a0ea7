// SPDX-License-Identifier: Apache-2.0

// Trace the free vertex of a kite around an ellipse and compare the
// enclosed area with the ellipse's.

use quadpeg::quad::{CyclicQuad, Vertex};
use quadpeg::solver::trace_locus;
use quadpeg::{ConvexCurve, Result};

pub fn run_example() -> Result<(f64, f64)> {
    let ellipse = ConvexCurve::ellipse(2.0, 1.0)?;
    let trace = trace_locus(&ellipse, &CyclicQuad::kite(), Vertex::C, 2048)?;
    Ok((trace.area()?, ellipse.enclosed_area()))
}

#[allow(dead_code)]
fn main() -> Result<()> {
    let (locus, curve) = run_example()?;
    println!("locus area {locus:.12}, curve area {curve:.12}, difference {:.1e}", locus - curve);
    Ok(())
}

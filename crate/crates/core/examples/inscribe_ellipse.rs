// SPDX-License-Identifier: Apache-2.0

// Inscribe a square in the ellipse x²/4 + y² = 1.

use quadpeg::quad::CyclicQuad;
use quadpeg::solver::{inscribe, InscriptionResult};
use quadpeg::{ConvexCurve, Result};

pub fn run_example() -> Result<InscriptionResult> {
    let ellipse = ConvexCurve::ellipse(2.0, 1.0)?;
    inscribe(&ellipse, &CyclicQuad::square())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    let r = run_example()?;
    println!("status {:?}, residual {:.2e}", r.status, r.residual);
    for v in r.vertices.unwrap_or_default() {
        println!("  ({:+.12}, {:+.12})", v.x, v.y);
    }
    Ok(())
}

// SPDX-License-Identifier: Apache-2.0

// Round and blur a random convex polygon into a smooth strictly convex curve.

use quadpeg::approx::smooth_polygon;
use quadpeg::{ConvexPolygon, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Polygon area, smoothed area, and the worst vertex offset in units of `r`.
pub fn run_example() -> Result<(f64, f64, f64)> {
    let poly = ConvexPolygon::random(&mut ChaCha8Rng::seed_from_u64(3), 10);
    let r = 0.05 * poly.diameter();
    let curve = smooth_polygon(&poly, r)?;
    let worst = poly.vertices().iter().map(|&v| -curve.signed_distance(v) / r).fold(0.0, f64::max);
    Ok((poly.area(), curve.enclosed_area(), worst))
}

#[allow(dead_code)]
fn main() -> Result<()> {
    let (poly, smooth, worst) = run_example()?;
    println!("polygon area {poly:.6}, smoothed area {smooth:.6}, deepest vertex {worst:.3} r inside");
    Ok(())
}

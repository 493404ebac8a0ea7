// SPDX-License-Identifier: Apache-2.0

//! Independent checks: brute-force placement search, the locus area
//! identity, and six-point convex position.

mod brute;
mod position;
mod suites;

pub use brute::*;
pub use position::*;
pub use suites::*;

use serde::{Deserialize, Serialize};

use crate::curve::ConvexCurve;
use crate::error::Result;
use crate::quad::{CyclicQuad, Vertex};
use crate::solver::trace_locus;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AreaReport {
    pub locus_area: f64,
    pub curve_area: f64,
    pub deviation: f64,
    pub relative: f64,
}

/// Compare the area enclosed by the locus of `free` with the curve's area.
pub fn check_area_identity(curve: &ConvexCurve, quad: &CyclicQuad, free: Vertex, n: usize) -> Result<AreaReport> {
    let locus_area = trace_locus(curve, quad, free, n)?.area()?;
    let curve_area = curve.enclosed_area();
    let deviation = (locus_area - curve_area).abs();
    Ok(AreaReport { locus_area, curve_area, deviation, relative: deviation / curve_area })
}

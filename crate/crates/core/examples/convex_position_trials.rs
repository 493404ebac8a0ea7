// SPDX-License-Identifier: Apache-2.0

// Overlay two random copies of a quadrilateral at a shared vertex and count
// how often the other six vertices are in convex position.

use quadpeg::quad::{CyclicQuad, Vertex};
use quadpeg::verify::{lemma4_trial, lemma4_trial_points, run_trials, TrialSummary};
use quadpeg::Result;

/// Trials at the obtuse vertex and at an acute one.
pub fn run_example() -> Result<(TrialSummary, TrialSummary)> {
    let kite = CyclicQuad::kite();
    let obtuse = run_trials(10_000, 1, |seed| lemma4_trial(&kite, seed))?;
    let acute = run_trials(10_000, 1, |seed| lemma4_trial_points(&kite.canonical_vertices(), Vertex::D.index(), seed))?;
    Ok((obtuse, acute))
}

#[allow(dead_code)]
fn main() -> Result<()> {
    let (obtuse, acute) = run_example()?;
    println!("shared non-acute vertex: {} convex of {}", obtuse.violations, obtuse.accepted);
    println!("shared acute vertex:     {} convex of {}", acute.violations, acute.accepted);
    Ok(())
}

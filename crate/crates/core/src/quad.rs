// SPDX-License-Identifier: Apache-2.0

//! Cyclic quadrilaterals, their similarity drawings, and generic perturbations.
//!
//! A [`CyclicQuad`] is stored canonically as four angular positions on the
//! unit circle, so the scale of a [`Drawing`] is exactly the circumradius of
//! the drawn quadrilateral.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{wrap_angle, wrap_signed, Point};

/// Minimal angular separation between consecutive vertices (radians).
pub const MIN_SEPARATION: f64 = 1e-3;

/// Angles within this of π/2 count as right angles when testing non-acuteness.
const RIGHT_ANGLE_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Vertex {
    A,
    B,
    C,
    D,
}

impl Vertex {
    pub const ALL: [Vertex; 4] = [Vertex::A, Vertex::B, Vertex::C, Vertex::D];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Vertex {
        Vertex::ALL[i % 4]
    }

    /// Counterclockwise successor.
    pub fn next(self) -> Vertex {
        Vertex::from_index(self.index() + 1)
    }

    pub fn prev(self) -> Vertex {
        Vertex::from_index(self.index() + 3)
    }

    pub fn opposite(self) -> Vertex {
        Vertex::from_index(self.index() + 2)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Vertex::A => "a",
            Vertex::B => "b",
            Vertex::C => "c",
            Vertex::D => "d",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Vertex {
    type Err = Error;
    fn from_str(s: &str) -> Result<Vertex> {
        match s {
            "a" | "A" => Ok(Vertex::A),
            "b" | "B" => Ok(Vertex::B),
            "c" | "C" => Ok(Vertex::C),
            "d" | "D" => Ok(Vertex::D),
            _ => Err(Error::spec("free", format!("unknown vertex label {s:?}"))),
        }
    }
}

/// A quadrilateral inscribed in the unit circle, vertices `a, b, c, d`
/// in counterclockwise order.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "QuadAngles", into = "QuadAngles")]
pub struct CyclicQuad {
    phis: [f64; 4],
}

#[derive(Serialize, Deserialize)]
struct QuadAngles {
    phis: [f64; 4],
}

impl TryFrom<QuadAngles> for CyclicQuad {
    type Error = Error;
    fn try_from(q: QuadAngles) -> Result<Self> {
        CyclicQuad::new(q.phis)
    }
}

impl From<CyclicQuad> for QuadAngles {
    fn from(q: CyclicQuad) -> Self {
        QuadAngles { phis: q.phis }
    }
}

impl CyclicQuad {
    /// Angles are reduced into `[0, 2π)`; they must run counterclockwise
    /// around the circle once, each gap at least [`MIN_SEPARATION`].
    pub fn new(phis: [f64; 4]) -> Result<Self> {
        if phis.iter().any(|p| !p.is_finite()) {
            return Err(Error::InvalidQuad("angles must be finite".into()));
        }
        let phis = phis.map(wrap_angle);
        let gaps = gaps_of(&phis);
        let total: f64 = gaps.iter().sum();
        if (total - TAU).abs() > 1e-9 {
            return Err(Error::InvalidQuad(format!(
                "vertices are not in counterclockwise order (angles {phis:?})"
            )));
        }
        if let Some(i) = gaps.iter().position(|&g| g < MIN_SEPARATION) {
            return Err(Error::InvalidQuad(format!(
                "vertices {} and {} are {:.3e} rad apart, below {MIN_SEPARATION}",
                Vertex::from_index(i),
                Vertex::from_index(i + 1),
                gaps[i]
            )));
        }
        Ok(CyclicQuad { phis })
    }

    pub fn square() -> Self {
        CyclicQuad { phis: [0.0, FRAC_PI_2, PI, 1.5 * PI] }
    }

    /// Rectangle with side `ab` the short side and `|bc| / |ab| = aspect`.
    pub fn rectangle(aspect: f64) -> Result<Self> {
        if !(aspect > 0.0 && aspect.is_finite()) {
            return Err(Error::InvalidQuad(format!("rectangle aspect must be positive, got {aspect}")));
        }
        let beta = (1.0 / aspect).atan();
        CyclicQuad::new([-beta, beta, PI - beta, PI + beta])
    }

    /// The kite with interior angles `(π/2, 2π/3, π/2, π/3)` at `a, b, c, d`.
    pub fn kite() -> Self {
        CyclicQuad { phis: [0.0, PI / 3.0, 2.0 * PI / 3.0, 4.0 * PI / 3.0] }
    }

    /// Random quadrilateral with every arc between consecutive vertices at
    /// least `min_gap` and a uniformly random starting angle.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, min_gap: f64) -> Self {
        assert!(min_gap >= MIN_SEPARATION && 4.0 * min_gap < TAU);
        let slack = TAU - 4.0 * min_gap;
        // uniform point on the simplex via sorted uniforms
        let mut cuts = [rng.gen::<f64>(), rng.gen::<f64>(), rng.gen::<f64>()];
        cuts.sort_by(f64::total_cmp);
        let parts = [cuts[0], cuts[1] - cuts[0], cuts[2] - cuts[1], 1.0 - cuts[2]];
        let start = rng.gen::<f64>() * TAU;
        let mut phis = [0.0; 4];
        let mut at = start;
        for i in 0..4 {
            phis[i] = at;
            at += min_gap + slack * parts[i];
        }
        CyclicQuad::new(phis).expect("gaps respect the minimum separation")
    }

    pub fn phis(&self) -> [f64; 4] {
        self.phis
    }

    pub fn phi(&self, v: Vertex) -> f64 {
        self.phis[v.index()]
    }

    /// Counterclockwise arcs `a→b, b→c, c→d, d→a`.
    pub fn gaps(&self) -> [f64; 4] {
        gaps_of(&self.phis)
    }

    /// Canonical position of a vertex on the unit circle.
    pub fn canonical(&self, v: Vertex) -> Point {
        Point::unit(self.phi(v))
    }

    pub fn canonical_vertices(&self) -> [Point; 4] {
        self.phis.map(Point::unit)
    }

    /// Interior angles at `a, b, c, d` via the inscribed-angle theorem.
    pub fn interior_angles(&self) -> [f64; 4] {
        let g = self.gaps();
        // the angle at a vertex is half the arc between its two neighbours
        // that avoids it
        [
            0.5 * (g[1] + g[2]),
            0.5 * (g[2] + g[3]),
            0.5 * (g[3] + g[0]),
            0.5 * (g[0] + g[1]),
        ]
    }

    pub fn interior_angle(&self, v: Vertex) -> f64 {
        self.interior_angles()[v.index()]
    }

    pub fn is_nonacute(&self, v: Vertex) -> bool {
        self.interior_angle(v) >= FRAC_PI_2 - RIGHT_ANGLE_TOL
    }

    /// First adjacent pair in `(a,b), (b,c), (c,d), (d,a)` order whose
    /// interior angles are both at least π/2.
    pub fn nonacute_adjacent_pair(&self) -> (Vertex, Vertex) {
        Vertex::ALL
            .iter()
            .map(|&v| (v, v.next()))
            .find(|&(x, y)| self.is_nonacute(x) && self.is_nonacute(y))
            .expect("a cyclic quadrilateral always has two adjacent non-acute angles")
    }

    /// Vertices in the order the solver tries them as the free vertex:
    /// the non-acute adjacent pair first, then the other two.
    pub fn free_vertex_order(&self) -> [Vertex; 4] {
        let (x, y) = self.nonacute_adjacent_pair();
        let mut order = vec![x, y];
        for v in Vertex::ALL {
            if !order.contains(&v) {
                order.push(v);
            }
        }
        [order[0], order[1], order[2], order[3]]
    }

    /// Deterministic pseudo-random perturbation, each angle moved by at most `epsilon`.
    pub fn perturb(&self, epsilon: f64, seed: u64) -> Result<CyclicQuad> {
        if !(epsilon >= 0.0) {
            return Err(Error::InvalidQuad(format!("perturbation size must be non-negative, got {epsilon}")));
        }
        if epsilon == 0.0 {
            return Ok(*self);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // perturb the unwrapped angles so the cyclic order is judged on the gaps
        let mut unwrapped = [0.0; 4];
        let mut at = self.phis[0];
        let gaps = self.gaps();
        for i in 0..4 {
            unwrapped[i] = at + rng.gen_range(-epsilon..=epsilon);
            at += gaps[i];
        }
        for i in 0..4 {
            let next = if i == 3 { unwrapped[0] + TAU } else { unwrapped[i + 1] };
            if next - unwrapped[i] < MIN_SEPARATION {
                return Err(Error::PerturbationTooLarge { epsilon, min_separation: MIN_SEPARATION });
            }
        }
        CyclicQuad::new(unwrapped)
    }
}

fn gaps_of(phis: &[f64; 4]) -> [f64; 4] {
    let mut g = [0.0; 4];
    for i in 0..4 {
        let d = phis[(i + 1) % 4] - phis[i];
        g[i] = d.rem_euclid(TAU);
    }
    g
}

/// A non-degenerate similarity `p ↦ scale · R(rotation) p + translation`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Drawing {
    pub scale: f64,
    pub rotation: f64,
    pub translation: Point,
}

impl Drawing {
    pub const IDENTITY: Drawing = Drawing { scale: 1.0, rotation: 0.0, translation: Point::ORIGIN };

    pub fn new(scale: f64, rotation: f64, translation: Point) -> Result<Self> {
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::InvalidQuad(format!("drawing scale must be positive, got {scale}")));
        }
        Ok(Drawing { scale, rotation, translation })
    }

    #[inline]
    pub fn apply(&self, p: Point) -> Point {
        p.rotate(self.rotation) * self.scale + self.translation
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &Drawing) -> Drawing {
        Drawing {
            scale: self.scale * inner.scale,
            rotation: self.rotation + inner.rotation,
            translation: self.apply(inner.translation),
        }
    }

    /// The drawing that maps canonical `pa`, `pb` onto `qa`, `qb`.
    pub fn from_side(pa: Point, pb: Point, qa: Point, qb: Point) -> Option<Drawing> {
        let (src, dst) = (pb - pa, qb - qa);
        let (ls, ld) = (src.norm(), dst.norm());
        if ls == 0.0 || !(ld > 0.0) {
            return None;
        }
        let scale = ld / ls;
        let rotation = dst.angle() - src.angle();
        let translation = qa - pa.rotate(rotation) * scale;
        Some(Drawing { scale, rotation, translation })
    }

    /// Largest parameter difference, with rotation measured as arc length at
    /// radius `length`.
    pub fn distance(&self, other: &Drawing, length: f64) -> f64 {
        let rot = wrap_signed(self.rotation - other.rotation).abs() * length;
        let scale = (self.scale - other.scale).abs();
        rot.max(scale).max(self.translation.distance(other.translation))
    }

    /// Positions of `a, b, c, d` under this drawing.
    pub fn vertex_positions(&self, q: &CyclicQuad) -> [Point; 4] {
        q.canonical_vertices().map(|p| self.apply(p))
    }
}

/// Positions of `a, b, c, d` of `q` under drawing `d`.
pub fn vertex_positions(q: &CyclicQuad, d: &Drawing) -> [Point; 4] {
    d.vertex_positions(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(p: Point, q: Point) -> bool {
        (p - q).norm() < 1e-15
    }

    #[test]
    fn square_identity_positions() {
        let v = vertex_positions(&CyclicQuad::square(), &Drawing::IDENTITY);
        let want = [Point::new(1.0, 0.0), Point::new(0.0, 1.0), Point::new(-1.0, 0.0), Point::new(0.0, -1.0)];
        for (p, w) in v.iter().zip(want) {
            assert!(close(*p, w));
        }
    }

    #[test]
    fn square_scaled_translated() {
        let d = Drawing::new(2.0, 0.0, Point::new(1.0, 0.0)).unwrap();
        let v = vertex_positions(&CyclicQuad::square(), &d);
        let want = [Point::new(3.0, 0.0), Point::new(1.0, 2.0), Point::new(-1.0, 0.0), Point::new(1.0, -2.0)];
        for (p, w) in v.iter().zip(want) {
            assert!(close(*p, w));
        }
    }

    #[test]
    fn quarter_turn_cycles_square() {
        let q = CyclicQuad::square();
        let rotated = vertex_positions(&q, &Drawing::new(1.0, FRAC_PI_2, Point::ORIGIN).unwrap());
        let base = vertex_positions(&q, &Drawing::IDENTITY);
        for i in 0..4 {
            assert!(close(rotated[i], base[(i + 1) % 4]));
        }
    }

    #[test]
    fn kite_angles_and_pair() {
        let k = CyclicQuad::kite();
        let want = [FRAC_PI_2, 2.0 * PI / 3.0, FRAC_PI_2, PI / 3.0];
        for (a, w) in k.interior_angles().iter().zip(want) {
            assert!((a - w).abs() < 1e-15);
        }
        let (x, y) = k.nonacute_adjacent_pair();
        assert_eq!((x, y), (Vertex::A, Vertex::B));
        assert!((k.interior_angle(y) - 2.0 * PI / 3.0).abs() < 1e-15);
    }

    #[test]
    fn rectangle_aspect_two() {
        let r = CyclicQuad::rectangle(2.0).unwrap();
        for a in r.interior_angles() {
            assert!((a - FRAC_PI_2).abs() < 1e-15);
        }
        // derived independently: vertices (±2, ±1)/√5
        let s5 = 5f64.sqrt();
        let want = [
            Point::new(2.0 / s5, -1.0 / s5),
            Point::new(2.0 / s5, 1.0 / s5),
            Point::new(-2.0 / s5, 1.0 / s5),
            Point::new(-2.0 / s5, -1.0 / s5),
        ];
        for (p, w) in r.canonical_vertices().iter().zip(want) {
            assert!((*p - w).norm() < 1e-15);
        }
        let v = r.canonical_vertices();
        assert!((v[1].distance(v[2]) / v[0].distance(v[1]) - 2.0).abs() < 1e-14);
        assert_eq!(r.nonacute_adjacent_pair(), (Vertex::A, Vertex::B));
        assert_eq!(CyclicQuad::square().nonacute_adjacent_pair(), (Vertex::A, Vertex::B));
    }

    #[test]
    fn validation() {
        assert!(CyclicQuad::new([0.0, 2.0, 1.0, 3.0]).is_err());
        assert!(CyclicQuad::new([0.0, 1e-4, 1.0, 3.0]).is_err());
        assert!(CyclicQuad::new([0.0, f64::NAN, 1.0, 3.0]).is_err());
        // wrap-around order is accepted
        assert!(CyclicQuad::new([-0.3, 0.3, 2.0, 4.0]).is_ok());
        assert!(Drawing::new(0.0, 0.0, Point::ORIGIN).is_err());
    }

    #[test]
    fn perturb_bounds() {
        let q = CyclicQuad::square();
        assert_eq!(q.perturb(0.0, 1).unwrap(), q);
        let p = q.perturb(1e-3, 42).unwrap();
        for (a, b) in p.phis().iter().zip(q.phis()) {
            let d = (a - b).rem_euclid(TAU);
            assert!(d.min(TAU - d) <= 1e-3 + 1e-15);
        }
        assert_eq!(p, q.perturb(1e-3, 42).unwrap());
        match q.perturb(10.0, 3) {
            Err(Error::PerturbationTooLarge { .. }) => {}
            Ok(p) => assert!(CyclicQuad::new(p.phis()).is_ok()),
            Err(e) => panic!("unexpected error {e}"),
        }
    }

    #[test]
    fn serde_validates() {
        let q: CyclicQuad = serde_json::from_str(r#"{"phis":[0,1,2,3]}"#).unwrap();
        assert_eq!(q.phis(), [0.0, 1.0, 2.0, 3.0]);
        assert!(serde_json::from_str::<CyclicQuad>(r#"{"phis":[0,2,1,3]}"#).is_err());
    }
}

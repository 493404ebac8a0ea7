// SPDX-License-Identifier: Apache-2.0

//! Closed-form evaluation of a rounded, angularly blurred convex polygon.
//!
//! The body is `(K * P) ⊕ rB`: the Minkowski average of copies of `P` rotated
//! about its centroid, weighted by a Gaussian `K` of width `σ` in the rotation
//! angle, plus a disk of radius `r`. Its support function is `K * h_P + r`,
//! and its radius of curvature is
//!
//! ```text
//! ρ(θ) = r + Σ_j L_j K(θ - ν_j)
//! ```
//!
//! with `L_j`, `ν_j` the length and outward normal angle of edge `j`, so the
//! curve is C∞ with `ρ ≥ r > 0`.
//!
//! The boundary point with normal `θ` is `r u(θ) + Σ_j M_j(θ) v_j` (complex
//! product), where `M_j` integrates `K(φ) e^{iφ}` over the rotations that carry
//! vertex `j`'s normal cone onto `θ`. `M_j` is computed from a Taylor series in
//! `φ` against Gaussian moments, so no grid ever has to resolve `σ`.

use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};

use crate::geom::{wrap_angle, wrap_signed, Point};

/// Kernel support in units of `σ`; the Gaussian mass outside is below 1e-22.
const WINDOW: f64 = 10.0;

#[derive(Clone, Debug)]
pub(crate) struct SmoothedPolygon {
    /// Vertices relative to the rotation center.
    vertices: Vec<Point>,
    /// Outward normal angle of edge `j` (from vertex `j` to `j + 1`).
    normals: Vec<f64>,
    lengths: Vec<f64>,
    /// Exterior angle at vertex `j`.
    cone_widths: Vec<f64>,
    radius: f64,
    sigma: f64,
    full_mass: f64,
}

impl SmoothedPolygon {
    /// `vertices` must already be relative to the rotation center and
    /// counterclockwise convex.
    pub(crate) fn new(vertices: Vec<Point>, radius: f64, sigma: f64) -> Self {
        let n = vertices.len();
        let mut normals = Vec::with_capacity(n);
        let mut lengths = Vec::with_capacity(n);
        for j in 0..n {
            let e = vertices[(j + 1) % n] - vertices[j];
            normals.push(wrap_angle(e.angle() - PI / 2.0));
            lengths.push(e.norm());
        }
        let cone_widths = (0..n).map(|j| wrap_angle(normals[j] - normals[(j + n - 1) % n])).collect();
        SmoothedPolygon {
            vertices,
            normals,
            lengths,
            cone_widths,
            radius,
            sigma,
            full_mass: (-0.5 * sigma * sigma).exp(),
        }
    }

    pub(crate) fn radius(&self) -> f64 {
        self.radius
    }

    pub(crate) fn sigma(&self) -> f64 {
        self.sigma
    }

    pub(crate) fn edge_normals(&self) -> &[f64] {
        &self.normals
    }

    /// Boundary point with outward normal `theta`, relative to the center.
    pub(crate) fn point(&self, theta: f64) -> Point {
        let reach = WINDOW * self.sigma;
        let mut acc = Point::unit(theta) * self.radius;
        for (j, &v) in self.vertices.iter().enumerate() {
            // rotations φ with θ - φ inside vertex j's normal cone
            let lo = wrap_signed(theta - self.normals[j]);
            let hi = lo + self.cone_widths[j];
            for shift in [0.0, -TAU] {
                let (a, b) = (lo + shift, hi + shift);
                if b <= -reach || a >= reach {
                    continue;
                }
                let m = if a <= -reach && b >= reach {
                    Point::new(self.full_mass, 0.0)
                } else {
                    self.moment(a.max(-reach), b.min(reach))
                };
                // complex product m · v
                acc += Point::new(m.x * v.x - m.y * v.y, m.x * v.y + m.y * v.x);
            }
        }
        acc
    }

    /// Radius of curvature at normal angle `theta`.
    pub(crate) fn curvature_radius(&self, theta: f64) -> f64 {
        let reach = WINDOW * self.sigma;
        let mut rho = self.radius;
        for (j, &nu) in self.normals.iter().enumerate() {
            let d = wrap_signed(theta - nu);
            if d.abs() < reach {
                rho += self.lengths[j] * gaussian(d / self.sigma) / self.sigma;
            }
        }
        rho
    }

    /// `∫_a^b K(φ) e^{iφ} dφ` as a point `(re, im)`, for `-reach ≤ a < b ≤ reach`.
    fn moment(&self, a: f64, b: f64) -> Point {
        let s = self.sigma;
        let (alpha, beta) = (a / s, b / s);
        let (ga, gb) = (gaussian(alpha), gaussian(beta));
        // J_n = ∫_α^β t^n ϕ(t) dt by the recurrence J_n = (n-1) J_{n-2} + α^{n-1}ϕ(α) - β^{n-1}ϕ(β)
        let mut j_prev = normal_mass(alpha, beta); // J_0
        let mut j_cur = ga - gb; // J_1
        let (mut pa, mut pb) = (alpha, beta); // α^{n-1}, β^{n-1} for n = 2
        let mut re = j_prev;
        let mut im = s * j_cur;
        // σ^n / n!
        let mut coef = s;
        let mut small = 0;
        for n in 2..80usize {
            let j_next = (n - 1) as f64 * j_prev + pa * ga - pb * gb;
            coef *= s / n as f64;
            let term = coef * j_next;
            match n % 4 {
                0 => re += term,
                1 => im += term,
                2 => re -= term,
                _ => im -= term,
            }
            if term.abs() < 1e-20 {
                small += 1;
                if small >= 2 {
                    break;
                }
            } else {
                small = 0;
            }
            j_prev = j_cur;
            j_cur = j_next;
            pa *= alpha;
            pb *= beta;
        }
        Point::new(re, im)
    }
}

/// Standard normal density.
#[inline]
fn gaussian(t: f64) -> f64 {
    const INV_SQRT_TAU: f64 = 0.398_942_280_401_432_7;
    INV_SQRT_TAU * (-0.5 * t * t).exp()
}

/// Upper tail `P(Z > t)`.
#[inline]
fn upper_tail(t: f64) -> f64 {
    0.5 * libm::erfc(t * FRAC_1_SQRT_2)
}

/// `P(α < Z < β)` without cancellation in either tail.
fn normal_mass(alpha: f64, beta: f64) -> f64 {
    if alpha >= 0.0 {
        upper_tail(alpha) - upper_tail(beta)
    } else if beta <= 0.0 {
        upper_tail(-beta) - upper_tail(-alpha)
    } else {
        1.0 - upper_tail(-alpha) - upper_tail(beta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square(radius: f64, sigma: f64) -> SmoothedPolygon {
        let v = vec![
            Point::new(-0.5, -0.5),
            Point::new(0.5, -0.5),
            Point::new(0.5, 0.5),
            Point::new(-0.5, 0.5),
        ];
        SmoothedPolygon::new(v, radius, sigma)
    }

    /// Direct quadrature of `∫ K(φ) e^{iφ}` over `[a, b]`.
    fn moment_quadrature(sigma: f64, a: f64, b: f64) -> Point {
        let n = 200_000;
        let h = (b - a) / n as f64;
        let mut acc = Point::ORIGIN;
        for k in 0..=n {
            let phi = a + k as f64 * h;
            let w = if k == 0 || k == n { 0.5 } else { 1.0 };
            acc += Point::unit(phi) * (w * h * gaussian(phi / sigma) / sigma);
        }
        acc
    }

    #[test]
    fn moment_matches_quadrature() {
        for &sigma in &[1e-4, 0.03, 0.25] {
            let sp = square(0.1, sigma);
            for &(a, b) in &[(-3.0, 0.5), (0.2, 1.7), (-9.0, -8.5), (-10.0, 10.0)] {
                let got = sp.moment(a * sigma, b * sigma);
                let want = moment_quadrature(sigma, a * sigma, b * sigma);
                assert!((got - want).norm() < 1e-10, "sigma {sigma} [{a},{b}]: {got:?} vs {want:?}");
            }
        }
    }

    #[test]
    fn far_from_corners_is_shrunk_vertex_plus_disk() {
        let sp = square(0.1, 0.01);
        let theta = PI / 4.0;
        let p = sp.point(theta);
        let want = Point::new(0.5, 0.5) * (-0.5f64 * 0.01 * 0.01).exp() + Point::unit(theta) * 0.1;
        assert!((p - want).norm() < 1e-15);
    }

    #[test]
    fn curvature_radius_is_derivative_of_boundary() {
        let sp = square(0.05, 0.02);
        for k in 0..400 {
            let theta = TAU * k as f64 / 400.0 + 0.001;
            let eps = 1e-6;
            let dp = (sp.point(theta + eps) - sp.point(theta - eps)) * (0.5 / eps);
            // p'(θ) = ρ(θ) u⊥(θ)
            let rho = sp.curvature_radius(theta);
            let want = Point::unit(theta).perp() * rho;
            assert!((dp - want).norm() < 1e-6 * rho.max(1.0), "theta {theta}: {dp:?} vs {want:?}");
        }
    }
}

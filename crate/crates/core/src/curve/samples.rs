// SPDX-License-Identifier: Apache-2.0

//! Support functions given as uniform samples, evaluated through their
//! trigonometric interpolant.

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

#[derive(Clone, Debug)]
pub(crate) struct SupportSamples {
    samples: Vec<f64>,
    /// `h(θ) = Σ_k a_k cos kθ + b_k sin kθ`, truncated once the tail is negligible.
    cos: Vec<f64>,
    sin: Vec<f64>,
}

impl SupportSamples {
    pub(crate) fn new(samples: Vec<f64>) -> Self {
        let n = samples.len();
        let mut buf: Vec<Complex<f64>> = samples.iter().map(|&h| Complex::new(h, 0.0)).collect();
        FftPlanner::new().plan_fft_forward(n).process(&mut buf);

        let half = n / 2;
        let mut cos = Vec::with_capacity(half + 1);
        let mut sin = Vec::with_capacity(half + 1);
        let inv = 1.0 / n as f64;
        cos.push(buf[0].re * inv);
        sin.push(0.0);
        for k in 1..=half {
            if 2 * k == n {
                // Nyquist term, real for real input
                cos.push(buf[k].re * inv);
                sin.push(0.0);
            } else {
                cos.push(2.0 * buf[k].re * inv);
                sin.push(-2.0 * buf[k].im * inv);
            }
        }
        let scale = cos[0].abs().max(1e-300);
        let keep = (0..cos.len())
            .rev()
            .find(|&k| cos[k].hypot(sin[k]) > 1e-14 * scale)
            .unwrap_or(0);
        cos.truncate(keep + 1);
        sin.truncate(keep + 1);
        SupportSamples { samples, cos, sin }
    }

    pub(crate) fn samples(&self) -> &[f64] {
        &self.samples
    }

    #[cfg(test)]
    pub(crate) fn harmonics(&self) -> usize {
        self.cos.len().saturating_sub(1)
    }

    /// `(h, h', h'')` at `theta`.
    pub(crate) fn eval(&self, theta: f64) -> (f64, f64, f64) {
        let (s1, c1) = theta.sin_cos();
        let (mut c, mut s) = (1.0, 0.0);
        let mut h = self.cos[0];
        let (mut dh, mut ddh) = (0.0, 0.0);
        for k in 1..self.cos.len() {
            let (cn, sn) = (c * c1 - s * s1, s * c1 + c * s1);
            c = cn;
            s = sn;
            let kf = k as f64;
            let (a, b) = (self.cos[k], self.sin[k]);
            let even = a * c + b * s;
            h += even;
            dh += kf * (b * c - a * s);
            ddh -= kf * kf * even;
        }
        (h, dh, ddh)
    }
}

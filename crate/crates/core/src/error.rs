// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

use crate::quad::Vertex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    #[error("curve is not strictly convex: h + h'' = {value:e} at theta = {theta}")]
    NotStrictlyConvex { theta: f64, value: f64 },

    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),

    #[error("invalid quadrilateral: {0}")]
    InvalidQuad(String),

    #[error("perturbation of size {epsilon} collapses vertex separation below {min_separation}")]
    PerturbationTooLarge { epsilon: f64, min_separation: f64 },

    #[error("offset {offset} lies outside the slab ({lo}, {hi})")]
    NoChord { offset: f64, lo: f64, hi: f64 },

    #[error("offset {offset} is tangent to the curve (slab ({lo}, {hi}))")]
    DegenerateChord { offset: f64, lo: f64, hi: f64 },

    #[error("no three-on-curve drawing found for free vertex {free} at alpha = {alpha}")]
    TripleNotFound {
        alpha: f64,
        free: Vertex,
        /// `(offset fraction, signed distance of the third vertex)` per probe.
        sweep: Vec<(f64, f64)>,
    },

    #[error("locus trace broke down at alpha = {alpha}: {source}")]
    PartialTrace {
        alpha: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("locus trace is not closed (gap {gap:e})")]
    OpenTrace { gap: f64 },

    #[error("sample count {got} below minimum {min}")]
    TooFewSamples { got: usize, min: usize },

    #[error("smoothing radius {radius:e} is outside the resolvable range: {reason}")]
    Smoothing { radius: f64, reason: String },

    #[error("no sign change on [{lo}, {hi}] (f = {f_lo:e}, {f_hi:e})")]
    NoBracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("bracketing did not converge in {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("points {0} and {1} coincide")]
    CoincidentPoints(usize, usize),

    #[error("{field}: {message}")]
    Spec { field: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn spec(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Spec { field: field.into(), message: message.into() }
    }
}

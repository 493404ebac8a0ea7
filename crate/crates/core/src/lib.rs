// SPDX-License-Identifier: Apache-2.0

pub mod approx;
pub mod cli;
pub mod curve;
pub mod error;
pub mod geom;
pub mod io;
pub mod quad;
pub mod root;
pub mod solver;
pub mod verify;

pub use curve::{ConvexCurve, ConvexPolygon, CurveKind};
pub use error::{Error, Result};
pub use geom::Point;

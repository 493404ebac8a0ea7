// SPDX-License-Identifier: Apache-2.0

//! Three-on-curve drawings, fourth-vertex loci, and inscriptions.

mod inscribe;
mod locus;
mod triple;

pub use inscribe::*;
pub use locus::*;
pub use triple::*;

//! Exact-arithmetic laboratory for distinct-distance counting experiments.
//!
//! The crate computes, over arbitrary-precision rationals, the combinatorial
//! statistics that relate distinct distances between planar point sets to
//! incidences between points and low-degree curves:
//!
//! * distance-class partitions and ordered quadruple counts, split into a
//!   "aligned" part and a "generic" part, with a Cauchy-Schwarz lower bound;
//! * for point sets split across a line: a family of hyperbolas whose
//!   point-curve incidences must reproduce the generic quadruple count
//!   exactly, plus multiplicity and difference-set bookkeeping;
//! * for point sets split across the unit circle: a family of curves in four
//!   variables with the analogous incidence identity and a finite-checkable
//!   intersection oracle (at most four intersections per curve pair);
//! * incidence-bound envelopes with certified high-precision evaluation, and
//!   dyadic multiplicity bookkeeping;
//! * seeded, reproducible configuration generators.
//!
//! Everything that is counted is counted exactly; floating point only appears
//! in report summaries (fitted exponents, CSV output) and never feeds back
//! into a decision. With the default `parallel` feature the heavy counting
//! loops run on rayon with deterministic merges, so results are independent
//! of thread count; disabling the feature compiles the sequential reference
//! paths only.

pub mod bounds;
pub mod circle;
pub mod distance;
pub mod error;
pub mod exact;
pub mod geom;
pub mod line;
mod par;
pub mod quad;

pub use error::{Error, Result};

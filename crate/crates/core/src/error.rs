//! Crate-wide error type.
//!
//! Variants are grouped by how callers are expected to react:
//!
//! * input/validation problems (`TooFewPoints`, `DuplicatePoint`, …) mean the
//!   caller handed us a configuration that violates a documented precondition;
//! * `SizeGuard` means the request was refused because it would exceed a
//!   documented size cap (callers may retry with the guard lifted);
//! * `CrossCheckFailed` and `BoundViolation` mean an internal identity that
//!   must hold for every valid input did not hold — either the input was
//!   corrupted or the implementation is wrong. These are never swallowed.

use crate::exact::Rat;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("duplicate point ({x}, {y})")]
    DuplicatePoint { x: String, y: String },

    #[error("point sets overlap in {count} point(s), first ({x}, {y})")]
    Overlap { count: usize, x: String, y: String },

    #[error("point ({x}, {y}) is misplaced: {reason}")]
    MisplacedPoint { x: String, y: String, reason: String },

    #[error("lattice dimensions must be positive, got {width}x{height}")]
    ZeroDimension { width: usize, height: usize },

    #[error("duplicate curve parameter {value}")]
    DuplicateParameter { value: String },

    #[error("parameter {value} maps onto a coordinate axis")]
    AxisParameter { value: String },

    #[error("parameter out of range: {what}")]
    ParameterRange { what: String },

    #[error("operation on the zero polynomial")]
    ZeroPolynomial,

    #[error("expected degree {expected}, got polynomial of degree {got:?}")]
    WrongDegree { expected: usize, got: Option<usize> },

    #[error("resultant input degenerate: {reason}")]
    DegenerateResultant { reason: String },

    #[error("curve pair is degenerate: {reason}")]
    DegenerateCurvePair { reason: String },

    #[error("concentric pair: |p|^2 = |q|^2 = {norm}")]
    ConcentricPair { norm: String },

    #[error("curve intersection is infinite: {reason}")]
    InfiniteIntersection { reason: String },

    #[error("need at least {needed} samples for a fit, got {got}")]
    InsufficientSamples { needed: usize, got: usize },

    #[error("size guard: {what} = {value} exceeds cap {cap} (use the override to proceed)")]
    SizeGuard {
        what: String,
        value: u128,
        cap: u128,
    },

    #[error("cross-check failed: {what}: {left} != {right}")]
    CrossCheckFailed {
        what: String,
        left: String,
        right: String,
    },

    #[error("bound violated: {what} observed {observed} > allowed {allowed}")]
    BoundViolation {
        what: String,
        observed: u64,
        allowed: u64,
    },

    #[error("parse error: {what}")]
    Parse { what: String },

    #[error("io error on {path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    pub(crate) fn misplaced(x: &Rat, y: &Rat, reason: &str) -> Self {
        Error::MisplacedPoint {
            x: x.to_string(),
            y: y.to_string(),
            reason: reason.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

//! Error types shared by all modules.

use thiserror::Error;

/// Errors raised by library operations.
///
/// Report-style checks (manifold validation, wall-crossing verification)
/// return dedicated report types instead; `Error` covers contract
/// violations on individual operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("exterior algebra capacity is 64 generators, requested {requested}")]
    CapacityExceeded { requested: usize },

    #[error("generator index {0} outside 1..=64")]
    GeneratorOutOfRange(u32),

    #[error("multi-index entries must be strictly increasing")]
    IndicesNotIncreasing,

    #[error("generator count mismatch: {left} vs {right}")]
    GeneratorCountMismatch { left: usize, right: usize },

    #[error("expected a homogeneous element of degree {expected}, found support in degrees {found:?}")]
    NotHomogeneous { expected: usize, found: Vec<usize> },

    #[error("expected integral coefficients, found {coefficient} at {monomial}")]
    NotIntegral { monomial: String, coefficient: String },

    #[error("vector has length {found}, intersection form has rank {expected}")]
    VectorLengthMismatch { expected: usize, found: usize },

    #[error(
        "class is not characteristic: pairing with basis vector {basis_index} is {pairing}, \
         its self-intersection is {self_pairing} (parity mismatch)"
    )]
    NotCharacteristic {
        basis_index: usize,
        pairing: String,
        self_pairing: String,
    },

    #[error(
        "c^2 - signature = {difference} is not divisible by 8; \
         no intersection form admits this characteristic vector"
    )]
    LatticeInconsistency { difference: String },

    #[error(
        "triple pairing c[{i}][{j}] = {value} is odd; \
         the tensor data is inconsistent with a characteristic class"
    )]
    ParityViolation { i: usize, j: usize, value: String },

    #[error("index value {0} does not fit a machine integer")]
    IndexOverflow(String),

    #[error("operation requires b_+ = 1, manifold has b_+ = {0}")]
    RequiresBPlusOne(usize),

    #[error("period class has square {square} <= 0, outside the positive cone")]
    OutsidePositiveCone { square: String },

    #[error("zero-twist hypothesis fails: {0}")]
    ZeroTwistHypothesis(String),

    #[error("zero-twist sampling found inconsistent signs, which contradicts the chamber structure")]
    ZeroTwistInconsistent,

    #[error("k_max = {k_max} is below the leading term index {start}")]
    KMaxBelowStart { k_max: i64, start: i64 },

    #[error("divisor class has {found} multiplicities, surface has {expected} blown-up points")]
    MultiplicityCountMismatch { expected: usize, found: usize },

    #[error("the class plus the canonical class is odd in coordinate {index}; no line bundle induces it")]
    NonIntegralSpinor { index: usize },

    #[error("derived index {found} disagrees with m(m - K) = {expected}")]
    IndexMismatch { expected: i64, found: i64 },

    #[error("blow-up enumeration requires at least 3 points, got {0}")]
    TooFewPoints(usize),

    #[error("prescribed index must be a non-negative even integer, got {0}")]
    BadTargetIndex(i64),

    #[error("monomial table over {0} generators is too large to emit; limit is 16")]
    TableTooLarge(usize),
}

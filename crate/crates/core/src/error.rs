//! Error type shared across the crate.

use crate::curve::PlaceRef;

/// Everything that can go wrong while building curves, selections, gap
/// sets, or code designs.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("the Kummer exponent m must be at least 2, got {0}")]
    ExponentTooSmall(i64),

    #[error("at least one ramification multiplicity is required")]
    NoMultiplicities,

    #[error("ramification multiplicity #{0} is zero")]
    ZeroMultiplicity(usize),

    #[error("no place is totally ramified (every multiplicity shares a factor with m)")]
    NowhereTotallyRamified,

    #[error("curve parameters exceed the 64-bit arithmetic guard")]
    Overflow,

    #[error("{value} has no inverse modulo {modulus}")]
    NotInvertible { value: i64, modulus: i64 },

    #[error("finite place index {index} is out of range 1..={count}")]
    PlaceOutOfRange { index: usize, count: usize },

    #[error("place {0} is not totally ramified")]
    NotTotallyRamified(PlaceRef),

    #[error("place {0} selected twice")]
    DuplicatePlace(PlaceRef),

    #[error("a place selection must name at least one place")]
    EmptySelection,

    #[error("selection names {got} places but the curve only ramifies at {max}")]
    SelectionTooLarge { got: usize, max: usize },

    #[error("selection was built for a curve with {selection} branch places, not {curve}")]
    SelectionCurveMismatch { selection: usize, curve: usize },

    #[error("tuple has {got} coordinates, selection has {expected} places")]
    TupleLengthMismatch { expected: usize, got: usize },

    #[error("coordinate #{index} is {value}, expected a nonnegative integer")]
    NegativeCoordinate { index: usize, value: i64 },

    #[error("extension step expects a candidate coordinate in 1..={max}, got {got}")]
    CandidateOutOfRange { got: i64, max: i64 },

    #[error("parameters out of shape: {0}")]
    ShapeMismatch(String),

    #[error("parameter out of range: {0}")]
    ParameterRange(String),

    #[error("box is malformed: {0}")]
    InvalidBox(String),

    #[error("curve family rejected the parameters: {0}")]
    FamilyConstraint(String),

    #[error(
        "divisor degree {deg_g} violates the design window \
         {two_g_minus_two} < deg G < n <= {n_max} (n = {n})"
    )]
    WindowViolation {
        deg_g: i64,
        two_g_minus_two: i64,
        n: i64,
        n_max: i64,
    },

    #[error("there is no table {0}; the bundled tables are 1 through 4")]
    UnknownTable(u8),
}

pub type Result<T> = std::result::Result<T, Error>;

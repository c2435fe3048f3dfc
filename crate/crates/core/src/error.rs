use thiserror::Error;

/// Errors reported by the exact-arithmetic layer and the verification
/// routines built on top of it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A denominator polynomial was identically zero.
    #[error("denominator polynomial is zero")]
    ZeroDenominator,

    /// Division by a rational function that is identically zero.
    #[error("division by zero")]
    DivisionByZero,

    /// The gcd of two zero polynomials is undefined.
    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,

    /// Exact polynomial division was requested but the divisor does not
    /// divide the dividend.
    #[error("exact polynomial division left a nonzero remainder")]
    InexactDivision,

    /// Evaluation hit a point where the denominator vanishes.
    #[error("denominator vanishes at u = {point}")]
    PoleAtPoint { point: String },

    /// A power series was divided by a series that is zero to its
    /// truncation order.
    #[error("series divisor is zero to its truncation order")]
    ZeroSeriesDivisor,

    /// Series division needs the divisor valuation to be at most the
    /// dividend valuation.
    #[error(
        "series division needs valuation(divisor) <= valuation(dividend), \
         got {divisor} > {dividend}"
    )]
    ValuationMismatch { dividend: usize, divisor: usize },

    /// An index that must be nonnegative was negative.
    #[error("index must be nonnegative, got {0}")]
    NegativeIndex(i64),

    /// A q-Pochhammer base outside the supported shape.
    #[error("Pochhammer base must be a positive even power of u, got u^{0}")]
    BadPochhammerBase(i64),

    /// The input series is too short for the requested extraction depth.
    #[error(
        "series order {order} is too small to extract {depth} partial \
         denominators; at least {needed} is needed"
    )]
    InsufficientOrder {
        order: usize,
        depth: usize,
        needed: usize,
    },

    /// Continued-fraction extraction needs an input with valuation
    /// exactly two in z.
    #[error("extraction input must have z-valuation exactly 2, found {found:?}")]
    ExtractionValuation { found: Option<usize> },

    /// An extracted partial denominator carried a z-linear part, so the
    /// series does not have the claimed continued-fraction shape.
    #[error(
        "extracted partial denominator b_{index} has a nonzero z-linear \
         part; the continued-fraction shape does not hold"
    )]
    NonConstantPartialDenominator { index: usize },

    /// An extracted partial denominator was a genuine rational function,
    /// not a Laurent polynomial in q.
    #[error("extracted partial denominator b_{index} is not a Laurent polynomial: {value}")]
    NonPolynomialPartialDenominator { index: usize, value: String },

    /// A q-power exponent that must be an integer in u = q^(1/2) was not.
    #[error("exponent {numerator}/{denominator} is not an integer in u")]
    FractionalExponent { numerator: i64, denominator: i64 },

    /// The suite configuration is inconsistent.
    #[error("invalid suite configuration: {0}")]
    InvalidConfig(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

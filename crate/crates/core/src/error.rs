use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("conductor {from} does not divide {to}")]
    NonDivisibleConductor { from: u64, to: u64 },
    #[error("field mismatch: conductor {left} vs {right}")]
    FieldMismatch { left: u64, right: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("p-adic valuation at p={p} is not defined in Q(zeta_{conductor})")]
    UnsupportedField { conductor: u64, p: u64 },
    #[error("conductor must be positive")]
    ZeroConductor,
    #[error("conductor {0} is too large")]
    ConductorTooLarge(u64),
    #[error("series constant term is not a unit")]
    NonUnitConstantTerm,
    #[error("quotient has a pole at t=0 (numerator valuation {num} < denominator valuation {den})")]
    PoleAtZero { num: usize, den: usize },
    #[error("denominator series is identically zero to order {0}")]
    ZeroDenominator(usize),
    #[error("coefficient index {index} exceeds truncation order {order}")]
    OrderExceeded { index: usize, order: usize },
    #[error("truncation orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("character is not multiplicative: chi({a}*{b}) != chi({a})*chi({b})")]
    NotMultiplicative { a: u64, b: u64 },
    #[error("character support is wrong at {0}: zero exactly off the units")]
    WrongSupport(u64),
    #[error("character is not normalized: chi(1) != 1")]
    NotNormalized,
    #[error("unit group mod {0} is not cyclic")]
    NonCyclicUnitGroup(u64),
    #[error("character table has length {got}, expected modulus {expected}")]
    TableLength { expected: u64, got: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Everything that can go wrong while building or comparing series.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("coefficient overflow at q^{exponent}")]
    Overflow { exponent: i64 },

    #[error("invalid series: {0}")]
    InvalidSeries(String),

    #[error("invalid q-Pochhammer term: {0}")]
    InvalidTerm(String),

    #[error("eta quotient prefactor q^({numerator}/24) is not a non-negative integer power")]
    NonIntegralPrefactor { numerator: i64 },

    #[error("quadratic form {0} is not positive definite")]
    NotDefinite(String),

    #[error("quadratic form {0} is not indefinite")]
    NotIndefinite(String),

    #[error("form value at ({x}, {y}) is not divisible by the denominator {denominator}")]
    NonIntegralValue { x: i64, y: i64, denominator: i64 },

    #[error("invalid residue entry: {0}")]
    InvalidResidue(String),

    #[error("residue entries {first} and {second} overlap")]
    OverlappingEntries { first: usize, second: usize },

    #[error("the zero pair has no unit orbit")]
    ZeroPair,

    #[error("orbit enumeration bound |y| <= {bound} missed an orbit at exponent {exponent}")]
    EnumerationBound { bound: i64, exponent: i64 },

    #[error("{delta} does not divide level {level}")]
    NotADivisor { delta: i64, level: i64 },

    #[error("unsupported discriminant {0}; expected one of -24, -4, 24")]
    UnsupportedDiscriminant(i64),

    #[error("coefficient {coefficient} at q^{exponent} lies outside residue {residue} mod {modulus}")]
    SupportViolation {
        exponent: i64,
        coefficient: i64,
        residue: i64,
        modulus: i64,
    },

    #[error("table row {label}: {reason}")]
    TableMismatch { label: String, reason: String },

    #[error("route {route} cannot produce series {series}")]
    UnsupportedRoute { route: String, series: String },

    #[error("{0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;

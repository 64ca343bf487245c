use thiserror::Error;

/// Errors reported by sequence construction, sum evaluation, and analytics.
#[derive(Debug, Error)]
pub enum Error {
    #[error("no prime above {0} fits in 64 bits")]
    PrimeOverflow(u64),

    #[error("no prime in [{q_min}, {q_max}]")]
    EmptyRange { q_min: u64, q_max: u64 },

    #[error("modulus {q} is not prime")]
    NotPrime { q: u64 },

    #[error("schedule values must be strictly increasing (saw {prev} then {next})")]
    NotIncreasing { prev: u64, next: u64 },

    #[error("schedule must contain at least one prime")]
    EmptySchedule,

    #[error("invalid decimal coefficient `{text}`: {reason}")]
    BadDecimal { text: String, reason: &'static str },

    #[error("coefficient {index} is {value}; coefficients must lie in [0, 1)")]
    CoefficientRange { index: usize, value: String },

    #[error("leading coefficient a_{degree} must be nonzero")]
    LeadingZero { degree: usize },

    #[error("modulus {q} is below the minimum {min} for this polynomial")]
    ModulusTooSmall { q: u64, min: u64 },

    #[error("residue coefficient t_{index} = {value} is not below the modulus {q}")]
    ResidueRange { index: usize, value: u64, q: u64 },

    #[error("sequence is empty")]
    EmptySequence,

    #[error("sequence value {value} at line {line} is outside [0, 1)")]
    ValueRange { line: usize, value: f64 },

    #[error("line {line}: cannot parse `{text}` as a number")]
    BadSequenceLine { line: usize, text: String },

    #[error("frequency k = 0 carries no equidistribution information")]
    ZeroFrequency,

    #[error("frequency k = {k} outside [1, {max}]")]
    FrequencyOutOfRange { k: i64, max: u64 },

    #[error("degenerate polynomial: bound checks need degree >= 1 with nonzero leading residue")]
    DegeneratePolynomial,

    #[error("modulus {q} shares a factor with the degree {d}")]
    ModulusDegreeClash { q: u64, d: usize },

    #[error("modulus {q} exceeds the scan limit {limit}")]
    ScanLimitExceeded { q: u64, limit: u64 },

    #[error("invalid interval [{a}, {b}): need 0 <= a < b <= 1")]
    InvalidInterval { a: String, b: String },

    #[error("transition half-width {eps} does not fit: need eps < (b-a)/2 and, for a > 0, eps < min(a, 1-b)")]
    BandOverflow { eps: f64 },

    #[error("function `{name}` is not flagged smooth; Fourier decay applies to smooth functions only")]
    NonSmoothFunction { name: String },

    #[error("decay constant H must be positive, got {h}")]
    NonPositiveH { h: f64 },

    #[error("decay check needs a grid of at least 16 points, got {q}")]
    GridTooSmall { q: u64 },

    #[error("function `{name}` is undefined at x = {x}")]
    EvaluatorDomain { name: String, x: f64 },

    #[error("unknown test function `{name}`")]
    UnknownFunction { name: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

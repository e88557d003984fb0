use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("k must be at least 1, got {0}")]
    InvalidDegree(u32),

    #[error("exponent t must be positive, got {0}")]
    InvalidExponent(f64),

    #[error("derivative order {0} is not supported (expected 0..=4)")]
    UnsupportedDerivative(u32),

    #[error("quadrature needs at least one node")]
    ZeroNodes,

    #[error("fourth-derivative bound must be a finite non-negative number, got {0}")]
    InvalidFourthBound(f64),

    #[error("target error must be positive, got {0}")]
    InvalidTarget(f64),

    #[error("power rho = {rho} outside 1..={max}")]
    RhoOutOfRange { rho: u32, max: u32 },

    #[error("denominator of G'^2/G is not certified positive on [-1, 1] (certified min {0})")]
    DenominatorNotPositive(f64),

    #[error("t = {0} is below 3; negative powers of G in the fourth derivative are not absorbed")]
    ExponentTooSmall(f64),

    #[error("t = {0} outside the supported range [{1}, {2}]")]
    ExponentOutOfRange(f64, f64, f64),

    #[error("small-v estimate needs a bound on G'^2/G, none in ledger for k = {0}")]
    MissingRatioBound(u32),

    #[error("min G is not certified positive for k = {0}")]
    NonPositiveMinimum(u32),

    #[error("log bound {derived} exceeds the configured cap {cap}")]
    LogBoundExceeded { derived: f64, cap: f64 },

    #[error("log power m = {m} with xi >= {xi_min} lies outside the endpoint-maximum window (m/xi <= {limit})")]
    OutsideValidityWindow { m: u32, xi_min: f64, limit: f64 },

    #[error("coefficient {j}: planned node count {planned} exceeds cap {cap}")]
    NodeCapExceeded { j: usize, planned: u32, cap: u32 },

    #[error("coefficient {j}: {nodes} nodes is below the planned minimum {planned}")]
    TooFewNodes { j: usize, nodes: u32, planned: u32 },

    #[error("budget violated: {0}")]
    Budget(String),

    #[error("sign chain failed at derivative {j}: value {value} is not negative")]
    SignChainFailed { j: usize, value: f64 },

    #[error("interval [{a}, {b}] is not inside the model range [{lo}, {hi}]")]
    IntervalOutsideModel { a: f64, b: f64, lo: f64, hi: f64 },

    #[error("unsupported proof case k = {0} (supported: 3, 4)")]
    UnsupportedCase(u32),

    #[error("invalid configuration: {0}")]
    Config(String),
}

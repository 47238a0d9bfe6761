use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid degrees: n = {n}, m = {m} (need n >= 1 and 0 <= m <= n)")]
    InvalidDegrees { n: i64, m: i64 },

    #[error("coefficient vector has length {got}, expected {expected}")]
    CoefficientLength { expected: usize, got: usize },

    #[error("leading coefficient vanishes")]
    ZeroLeadingCoefficient,

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("quadrature did not converge: estimate {estimate:e}, error {error:e} after {subdivisions} subdivisions")]
    QuadratureBudget {
        estimate: f64,
        error: f64,
        subdivisions: usize,
    },

    #[error("continued fraction did not converge for a = {a}, b = {b}, x = {x}")]
    ContinuedFraction { a: f64, b: f64, x: f64 },

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("degree {n} exceeds the solver cap of {cap}")]
    DegreeOverBudget { n: usize, cap: usize },

    #[error("every Newton start diverged")]
    AllStartsDiverged,

    #[error("radius {radius} does not enclose all zeros (bound {bound})")]
    RadiusTooSmall { radius: f64, bound: f64 },

    #[error("experiment invalid: {failures} of {trials} trials uncertified")]
    ExperimentInvalid { failures: usize, trials: usize },

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

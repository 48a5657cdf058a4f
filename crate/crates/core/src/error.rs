use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma function pole at {0}")]
    Pole(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("overflow: {0}")]
    Overflow(String),

    #[error("parameter pole: {0}")]
    ParameterPole(String),

    #[error("{what} did not converge after {iterations} iterations")]
    NonConvergence { what: &'static str, iterations: usize },

    #[error("integrand is not finite at t = {0}")]
    Integrand(f64),

    #[error("parameters outside the admissible region: {0}")]
    Region(String),

    #[error("argument lies on the branch ray: {0}")]
    Ray(String),

    #[error("root {index} is off the unit circle (|z| - 1 = {deviation:e})")]
    OffCircle { index: usize, deviation: f64 },

    #[error("configuration too close to a boundary: {0}")]
    Boundary(String),

    #[error("degenerate configuration: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;

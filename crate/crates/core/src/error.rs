use thiserror::Error;

/// Errors raised by the numerical routines and the scenario driver.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("overflow: {0}")]
    Overflow(String),

    #[error("argument |z| = {abs_z} exceeds the configured limit {limit}")]
    ArgumentLimit { abs_z: f64, limit: f64 },

    #[error("Bessel order {order} exceeds the configured maximum {max}")]
    OrderLimit { order: i64, max: u32 },

    #[error("grid too small: need at least {needed} samples, got {got}")]
    GridTooSmall { needed: usize, got: usize },

    #[error("truncation N = {n} is too small (need at least {min})")]
    TruncationTooSmall { n: usize, min: usize },

    #[error("singular prefactor: {0}")]
    SingularPrefactor(String),

    #[error("quadrature did not converge: {0}")]
    NonConvergence(String),

    #[error("eigensolver failure: {0}")]
    Eigensolve(String),

    #[error("integrator unstable: step halving changed the endpoint by {change:e} (limit {limit:e})")]
    Unstable { change: f64, limit: f64 },

    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

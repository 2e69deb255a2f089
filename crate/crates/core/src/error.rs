use thiserror::Error;

/// Errors produced by the core library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested system is too large for a dense representation.
    #[error("capacity exceeded: {what} supports at most {max} sites, got {got}")]
    Capacity {
        what: &'static str,
        max: usize,
        got: usize,
    },

    /// A closed-form result was used outside the range where it was validated.
    #[error("model domain error: {0}")]
    ModelDomain(String),

    /// The eigensolver did not reach the convergence threshold.
    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal {off:e})")]
    NotConverged { sweeps: usize, off: f64 },

    /// The requested engine cannot evaluate this configuration.
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

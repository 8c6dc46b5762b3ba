use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The optimum is never measured, so the expected sample count is infinite.
    #[error("degenerate probability: success probability is {0}, expected samples are unbounded")]
    DegenerateProbability(f64),

    /// Sampling until the optimum would take more than 10^9 trials on average.
    #[error("refusing to sample: success probability {0:e} is below 1e-9")]
    SamplingRefused(f64),

    #[error("resource limit: {what} is {requested}, limit is {limit}")]
    ResourceLimit {
        what: &'static str,
        requested: usize,
        limit: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}

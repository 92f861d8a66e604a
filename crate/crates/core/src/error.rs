use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Structure constants have inconsistent shapes.
    #[error("spec format error: {0}")]
    SpecFormat(String),
    #[error("containment violation: {0}")]
    Containment(String),
    #[error("antipode is not invertible")]
    NonInvertibleAntipode,
    #[error("functional is not convolution invertible: {0}")]
    ConvolutionNonInvertible(String),
    #[error("unknown fixture {name:?}; available: {available}")]
    Catalog { name: String, available: String },
    #[error("resource budget exceeded while building {what}: {needed} entries > limit {limit}")]
    Budget { what: String, needed: usize, limit: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// A machine-checked identity failed while constructing an object.
    #[error("construction invariant failed: {0}")]
    Construction(String),
}

pub type Result<T> = std::result::Result<T, Error>;

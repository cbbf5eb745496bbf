use thiserror::Error;

/// Errors raised by word generation, analysis and transforms.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Invalid configuration: malformed spec, bad window/sample sizes, unparsable literal.
    #[error("configuration error: {0}")]
    Config(String),
    /// A value outside the domain of the requested operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Index beyond what a finite object defines.
    #[error("range error: {0}")]
    Range(String),
    /// A search exceeded its resource cap. `partial` counts what was explored.
    #[error("resource cap exceeded: {what} (explored {partial}, cap {cap})")]
    Resource {
        what: String,
        partial: usize,
        cap: usize,
    },
    /// A finite window is too short to determine the requested output.
    #[error("boundary undetermined: need {needed} letters, have {available}")]
    BoundaryUndetermined { needed: usize, available: usize },
    /// A factor does not occur often enough in the sampled window.
    #[error("insufficient occurrences: {0}")]
    InsufficientOccurrences(String),
    /// The hypotheses of a construction do not hold on the window.
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

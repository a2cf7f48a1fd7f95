use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A backward shift or negative power was requested for a map with no
    /// inverse on its space.
    #[error("map is not invertible: {0}")]
    NonInvertibleMap(String),

    /// A point lies outside the space it was used with, or has the wrong kind
    /// (real vs symbolic) for the space.
    #[error("point outside space domain: {0}")]
    DomainViolation(String),

    /// An operation received an empty collection it cannot work with.
    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    /// A horizon argument exceeds the data that was actually computed.
    #[error("horizon {requested} exceeds available length {available}")]
    HorizonExceeded { requested: usize, available: usize },

    /// A horizon argument is too small for the requested construction.
    #[error("horizon too small: {0}")]
    HorizonTooSmall(String),

    /// The requested operation does not apply to this system shape.
    #[error("unsupported system: {0}")]
    UnsupportedSystem(String),

    /// An experiment's preconditions do not hold; the experiment is skipped
    /// rather than failed.
    #[error("hypothesis unmet: {0}")]
    HypothesisUnmet(String),

    /// A threshold grid was empty.
    #[error("empty threshold grid")]
    EmptyGrid,

    /// The configuration text could not be parsed at all.
    #[error("config parse error: {0}")]
    Parse(String),

    /// The configuration parsed but failed validation; every problem found is
    /// listed, not just the first.
    #[error("invalid config:\n{}", .0.join("\n"))]
    Validation(Vec<String>),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

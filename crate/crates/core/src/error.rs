use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A mode label is missing, duplicated or not shared between states.
    #[error("topology error: {0}")]
    Topology(String),

    /// The zero-count condition selects (numerically) no probability mass.
    #[error("post-selection impossible: success probability {0:e}")]
    PostSelectionImpossible(f64),

    #[error("state is not normalized: squared norm {0}")]
    NotNormalized(f64),
}

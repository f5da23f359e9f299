use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An incidence triple violates the matrix invariants.
    #[error("malformed incidence entry (edge {edge}, vertex {vertex}, value {value}): {reason}")]
    Structural {
        edge: usize,
        vertex: usize,
        value: i64,
        reason: &'static str,
    },

    #[error("invalid degree distribution: {0}")]
    InvalidDistribution(String),

    /// No vertex has a nonzero degree, so there is nothing to fit.
    #[error("degree distribution is empty (every vertex has degree 0)")]
    EmptyDistribution,

    #[error("degenerate distribution: {0}")]
    Degenerate(String),

    #[error("estimator precondition failed: {0}")]
    EstimatorPrecondition(String),

    #[error("observed degree {degree} lies below the first model bin {first_bin}")]
    Coverage { degree: u64, first_bin: u64 },

    #[error("invalid parameter: {0}")]
    Parameter(String),
}

impl Error {
    /// True for failures that stem from the data not admitting a power-law
    /// analysis, as opposed to malformed input.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::EmptyDistribution
                | Error::Degenerate(_)
                | Error::EstimatorPrecondition(_)
                | Error::Coverage { .. }
                | Error::Parameter(_)
        )
    }
}

use thiserror::Error;

use crate::embed::StuckReport;
use crate::matchings::PartialPms;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("retry budget exhausted after {attempts} attempts: {what}")]
    RetryExhausted { attempts: usize, what: String },

    #[error("combinatorial budget exceeded: {0}")]
    Budget(String),

    #[error("search failed: {0}")]
    SearchFailed(String),

    #[error("infeasible: {0}")]
    Infeasible(String),

    /// No perfect matching exists; `hall_violator` lists X-vertices whose
    /// neighbourhood is too small.
    #[error("no perfect matching: Hall violator of size {} with {} neighbours", hall_violator.len(), neighbourhood.len())]
    NoPerfectMatching {
        hall_violator: Vec<usize>,
        neighbourhood: Vec<usize>,
    },

    #[error("greedy embedding stuck: {0}")]
    EmbedStuck(Box<StuckReport>),

    #[error("not found within budget: {0}")]
    NotFound(String),

    #[error("only {} of {} matchings were produced", .0.completed.len(), .0.total)]
    Partial(Box<PartialPms>),

    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

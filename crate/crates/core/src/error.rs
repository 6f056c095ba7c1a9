use thiserror::Error;

use crate::groebner::BuchbergerStats;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    Ring(String),

    #[error("zero polynomial passed to {0}")]
    ZeroPoly(&'static str),

    #[error("unknown variable `{0}`")]
    Var(String),

    #[error("monomial order: {0}")]
    Order(String),

    #[error("resource limit exceeded: {what} ({stats})")]
    ResourceLimit { what: String, stats: BuchbergerStats },

    #[error("invalid parameters: {0}")]
    Param(String),

    #[error("elimination: {0}")]
    Elimination(String),

    #[error("root pairing: {0}")]
    RootPairing(String),

    #[error("root refinement did not converge: {0}")]
    RootRefine(String),

    #[error("mesh spec: {0}")]
    Spec(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ResourceLimit { .. } => 3,
            Error::Io(_) => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("subgroup is not contained in the ambient group")]
    SubgroupNotContained,
    #[error("{what}: {needed} exceeds cap {cap}")]
    CapExceeded { what: String, cap: u128, needed: u128 },
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("empty connection set")]
    EmptySet,
    #[error("digraph is not a 2-PCayley digraph")]
    Not2PCayley,
    #[error("unknown registry case `{0}`")]
    UnknownCase(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn cap(what: impl Into<String>, cap: u128, needed: u128) -> Self {
        Error::CapExceeded { what: what.into(), cap, needed }
    }

    /// Stable machine-readable error kind used in CLI error JSON and FFI codes.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::MalformedInput(_) => "malformed_input",
            Error::Parse(_) => "parse",
            Error::SubgroupNotContained => "subgroup_not_contained",
            Error::CapExceeded { .. } => "cap_exceeded",
            Error::BudgetExceeded(_) => "budget_exceeded",
            Error::NotNormal => "not_normal",
            Error::EmptySet => "empty_set",
            Error::Not2PCayley => "not_2pcayley",
            Error::UnknownCase(_) => "unknown_case",
            Error::Internal(_) => "internal",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

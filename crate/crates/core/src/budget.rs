//! Search budgets shared by the decision procedures and the census.
//!
//! Every bounded search fails with [`Error::BudgetExceeded`] or
//! [`Error::CapExceeded`] instead of returning a truncated answer.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::iso::DEFAULT_NODE_BUDGET;

/// Name of the environment variable read by [`Budgets::from_env`].
pub const BUDGET_ENV: &str = "CAYLEYISO_BUDGETS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budgets {
    /// Symbol checks allowed when scanning `Aut(G)` against translations.
    pub aut: u64,
    /// Candidate extensions tried by the semiregular subgroup search.
    pub search: u64,
    /// Connection sets enumerated by one census run.
    pub census: u64,
    /// Search-tree nodes per canonical labeling.
    pub canon_nodes: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets { aut: 100_000_000, search: 200_000_000, census: 10_000_000, canon_nodes: DEFAULT_NODE_BUDGET }
    }
}

impl Budgets {
    /// Applies overrides of the form `aut=N,search=N,census=N,canon=N`.
    pub fn with_overrides(mut self, spec: &str) -> Result<Self> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("budget override `{item}` is not key=value")))?;
            let value: u64 = value
                .trim()
                .replace('_', "")
                .parse()
                .map_err(|_| Error::Parse(format!("budget value `{value}` is not a number")))?;
            if value == 0 {
                return Err(Error::Parse(format!("budget `{key}` must be positive")));
            }
            match key.trim() {
                "aut" => self.aut = value,
                "search" => self.search = value,
                "census" => self.census = value,
                "canon" => self.canon_nodes = value,
                other => return Err(Error::Parse(format!("unknown budget `{other}`"))),
            }
        }
        Ok(self)
    }

    /// Defaults, overridden by [`BUDGET_ENV`] when it is set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(BUDGET_ENV) {
            Ok(spec) => Budgets::default().with_overrides(&spec),
            Err(_) => Ok(Budgets::default()),
        }
    }
}

pub(crate) fn exceeded(what: &str, limit: u64) -> Error {
    Error::BudgetExceeded(format!("{what} exceeded {limit}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_parse() {
        let b = Budgets::default().with_overrides("aut=5, census=1_000").unwrap();
        assert_eq!(b.aut, 5);
        assert_eq!(b.census, 1000);
        assert_eq!(b.search, Budgets::default().search);
        assert!(Budgets::default().with_overrides("aut=0").is_err());
        assert!(Budgets::default().with_overrides("speed=3").is_err());
        assert!(Budgets::default().with_overrides("aut").is_err());
    }
}

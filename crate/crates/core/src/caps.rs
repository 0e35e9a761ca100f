use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

/// Hard limits for the exhaustive engines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationCaps {
    /// Most tables an enumeration or a clone level may hold.
    pub max_results: usize,
    /// Wall-clock budget for one engine call.
    pub time_budget: Duration,
}

impl Default for EnumerationCaps {
    fn default() -> Self {
        EnumerationCaps {
            max_results: 1_000_000,
            time_budget: Duration::from_secs(120),
        }
    }
}

impl EnumerationCaps {
    pub fn new(max_results: usize, time_budget: Duration) -> Self {
        assert!(max_results > 0, "max_results must be positive");
        assert!(!time_budget.is_zero(), "time budget must be positive");
        EnumerationCaps {
            max_results,
            time_budget,
        }
    }

    pub fn with_max_results(self, max_results: usize) -> Self {
        EnumerationCaps::new(max_results, self.time_budget)
    }

    pub(crate) fn deadline(&self) -> Deadline {
        Deadline(Instant::now() + self.time_budget)
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Deadline(Instant);

impl Deadline {
    pub(crate) fn expired(&self) -> bool {
        Instant::now() >= self.0
    }
}

/// Which limit stopped a search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CapHit {
    MaxResults,
    TimeBudget,
}

/// Outcome of an exhaustive search. Anything other than `Complete` means the
/// accompanying data is a truncated prefix and must not be read as a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    Complete,
    CapExceeded(CapHit),
}

impl SearchStatus {
    pub fn is_complete(self) -> bool {
        self == SearchStatus::Complete
    }

    pub(crate) fn merge(self, other: SearchStatus) -> SearchStatus {
        match (self, other) {
            (SearchStatus::Complete, s) | (s, SearchStatus::Complete) => s,
            (SearchStatus::CapExceeded(CapHit::TimeBudget), _)
            | (_, SearchStatus::CapExceeded(CapHit::TimeBudget)) => {
                SearchStatus::CapExceeded(CapHit::TimeBudget)
            }
            _ => SearchStatus::CapExceeded(CapHit::MaxResults),
        }
    }
}

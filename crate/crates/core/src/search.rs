//! Budgets and counters shared by every search.

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};

/// Node and wall-clock budgets plus an optional cooperative cancel flag.
#[derive(Clone, Debug)]
pub struct SearchLimits {
    pub node_budget: u64,
    pub time_budget: Option<Duration>,
    pub cancel: Option<Arc<AtomicBool>>,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { node_budget: 50_000_000, time_budget: None, cancel: None }
    }
}

impl SearchLimits {
    pub fn unlimited() -> Self {
        SearchLimits { node_budget: u64::MAX, time_budget: None, cancel: None }
    }

    pub fn nodes(node_budget: u64) -> Self {
        SearchLimits { node_budget, ..Self::unlimited() }
    }

    pub fn with_time(mut self, budget: Duration) -> Self {
        self.time_budget = Some(budget);
        self
    }

    pub fn with_cancel(mut self, flag: Arc<AtomicBool>) -> Self {
        self.cancel = Some(flag);
        self
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counters {
    pub nodes: u64,
    pub states: u64,
    /// Largest single DP table seen.
    pub peak_states: u64,
    pub variables: u64,
}

impl Counters {
    pub fn absorb(&mut self, other: Counters) {
        self.nodes += other.nodes;
        self.states += other.states;
        self.peak_states = self.peak_states.max(other.peak_states);
        self.variables += other.variables;
    }
}

/// Running search: counts nodes and aborts when a budget runs out.
#[derive(Debug)]
pub struct Search {
    limits: SearchLimits,
    started: Instant,
    pub counters: Counters,
}

const CLOCK_STRIDE: u64 = 1024;

impl Search {
    pub fn new(limits: &SearchLimits) -> Self {
        Search { limits: limits.clone(), started: Instant::now(), counters: Counters::default() }
    }

    pub fn limits(&self) -> &SearchLimits {
        &self.limits
    }

    /// Counts one search node.
    pub fn tick(&mut self) -> Result<()> {
        self.counters.nodes += 1;
        if self.counters.nodes > self.limits.node_budget {
            return Err(Error::BudgetExceeded);
        }
        if self.counters.nodes.is_multiple_of(CLOCK_STRIDE) {
            self.check_clock()?;
        }
        Ok(())
    }

    pub fn check_clock(&self) -> Result<()> {
        if let Some(flag) = &self.limits.cancel {
            if flag.load(Ordering::Relaxed) {
                return Err(Error::BudgetExceeded);
            }
        }
        if let Some(budget) = self.limits.time_budget {
            if self.started.elapsed() > budget {
                return Err(Error::BudgetExceeded);
            }
        }
        Ok(())
    }

    /// Records one finished table of `count` states.
    pub fn add_states(&mut self, count: u64) {
        self.counters.states += count;
        self.counters.peak_states = self.counters.peak_states.max(count);
    }

    pub fn add_variables(&mut self, count: u64) {
        self.counters.variables += count;
    }

    /// Limits for a nested search that shares the remaining budget.
    pub fn remaining(&self) -> SearchLimits {
        SearchLimits {
            node_budget: self.limits.node_budget.saturating_sub(self.counters.nodes),
            time_budget: self.limits.time_budget.map(|b| b.saturating_sub(self.started.elapsed())),
            cancel: self.limits.cancel.clone(),
        }
    }
}

//! Worker count and work budget shared by the enumeration kernels.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};

/// Default cap on enumerated candidates (2^32).
pub const DEFAULT_BUDGET: u128 = 1 << 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Exec {
    /// Worker threads, at least 1.
    pub threads: usize,
    /// Maximum number of enumeration steps a single call may plan.
    pub budget: u128,
}

impl Default for Exec {
    fn default() -> Self {
        Exec {
            threads: std::thread::available_parallelism().map_or(1, |n| n.get()),
            budget: DEFAULT_BUDGET,
        }
    }
}

impl Exec {
    pub fn new(threads: usize, budget: u128) -> Self {
        Exec { threads: threads.max(1), budget: budget.max(1) }
    }

    pub fn with_threads(self, threads: usize) -> Self {
        Exec { threads: threads.max(1), ..self }
    }

    pub fn with_budget(self, budget: u128) -> Self {
        Exec { budget: budget.max(1), ..self }
    }

    /// Fails with `BudgetExceeded` if `needed` is over the cap.
    pub fn check(&self, what: &'static str, needed: &BigUint) -> Result<()> {
        match needed.to_u128() {
            Some(v) if v <= self.budget => Ok(()),
            _ => Err(Error::BudgetExceeded { what, needed: needed.to_string(), budget: self.budget }),
        }
    }

    /// Runs `f` inside a rayon pool with `threads` workers.
    pub fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        match rayon::ThreadPoolBuilder::new().num_threads(self.threads).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        }
    }

    /// Number of chunks to split a parallel scan into.
    pub fn target_chunks(&self) -> usize {
        64 * self.threads
    }
}

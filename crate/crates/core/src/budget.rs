//! Step and wall-clock limits for the exhaustive searches.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_steps: u64,
    pub time_cap: Option<Duration>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_steps: 2_000_000_000,
            time_cap: None,
        }
    }
}

impl Budget {
    pub fn steps(max_steps: u64) -> Self {
        Budget {
            max_steps,
            time_cap: None,
        }
    }

    pub fn unlimited() -> Self {
        Budget {
            max_steps: u64::MAX,
            time_cap: None,
        }
    }

    pub fn with_time_cap(mut self, cap: Duration) -> Self {
        self.time_cap = Some(cap);
        self
    }

    pub fn meter(&self) -> Meter {
        Meter {
            steps: AtomicU64::new(0),
            exhausted: AtomicBool::new(false),
            max_steps: self.max_steps,
            deadline: self.time_cap.map(|c| Instant::now() + c),
        }
    }
}

/// Shared counter for one search. Safe to tick from several shards; a
/// stale read only delays the stop by a few steps.
#[derive(Debug)]
pub struct Meter {
    steps: AtomicU64,
    exhausted: AtomicBool,
    max_steps: u64,
    deadline: Option<Instant>,
}

impl Meter {
    /// Records `n` steps; returns `false` once the budget is spent.
    #[inline]
    pub fn tick(&self, n: u64) -> bool {
        if self.exhausted.load(Ordering::Relaxed) {
            return false;
        }
        let before = self.steps.fetch_add(n, Ordering::Relaxed);
        let after = before.saturating_add(n);
        let over_time = self.deadline.is_some_and(|d| {
            // clock reads are throttled to every 2^16 steps
            (before >> 16) != (after >> 16) && Instant::now() >= d
        });
        if after > self.max_steps || over_time {
            self.exhausted.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    pub fn exhausted(&self) -> bool {
        self.exhausted.load(Ordering::Relaxed)
    }

    pub fn used(&self) -> u64 {
        self.steps.load(Ordering::Relaxed)
    }
}

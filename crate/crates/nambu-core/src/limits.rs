//! Global guard against runaway intermediate expression swell.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{Error, Result};

pub const DEFAULT_TERM_LIMIT: usize = 1_000_000;

static TERM_LIMIT: AtomicUsize = AtomicUsize::new(DEFAULT_TERM_LIMIT);

/// Current ceiling on the number of terms any polynomial may hold.
pub fn term_limit() -> usize {
    TERM_LIMIT.load(Ordering::Relaxed)
}

/// Replaces the ceiling. Zero is treated as "no limit is ever satisfied"
/// and rejected in favour of 1.
pub fn set_term_limit(limit: usize) {
    TERM_LIMIT.store(limit.max(1), Ordering::Relaxed);
}

pub(crate) fn check_terms(count: usize) -> Result<()> {
    let limit = term_limit();
    if count > limit {
        Err(Error::ResourceLimit { limit })
    } else {
        Ok(())
    }
}

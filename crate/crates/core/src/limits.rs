//! Size guards for brute-force routines.
//!
//! `MEXT_MAX_ORDER`, when set to a positive integer, replaces both defaults.

use crate::error::{MextError, Result};

pub const DEFAULT_METRIC_LIMIT: u64 = 1024;
pub const DEFAULT_FORM_LIMIT: u64 = 64;
pub const COMPLEMENT_LIMIT: u64 = 1 << 12;

fn env_override() -> Option<u64> {
    std::env::var("MEXT_MAX_ORDER")
        .ok()
        .and_then(|s| s.trim().parse::<u64>().ok())
        .filter(|&n| n > 0)
}

/// Largest metric group handled by isometry search.
pub fn metric_limit() -> u64 {
    env_override().unwrap_or(DEFAULT_METRIC_LIMIT)
}

/// Largest group on which quadratic forms are enumerated.
pub fn form_limit() -> u64 {
    env_override().unwrap_or(DEFAULT_FORM_LIMIT)
}

pub(crate) fn check(what: &'static str, size: u64, limit: u64) -> Result<()> {
    if size > limit {
        Err(MextError::SizeGuard { what, size, limit })
    } else {
        Ok(())
    }
}

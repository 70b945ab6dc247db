//! Size caps. `OMCONF_MAX_N` may lower any of them, never raise them.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Largest state space (events fit a 32-bit index).
pub const MAX_STATES: usize = 24;
/// Largest space for which a full 2ⁿ × 2ⁿ relation matrix is stored.
pub const MAX_MATRIX_STATES: usize = 12;
/// Largest space for axiom checks that scan all event triples.
pub const MAX_TRIPLE_STATES: usize = 8;
/// Largest space for the state weak-order enumerator.
pub const MAX_ORDER_STATES: usize = 8;
/// Largest space for the event weak-order enumerator (2³ = 8 events).
pub const MAX_EVENT_ORDER_STATES: usize = 3;
/// Largest space for the backtracking search over whole relations.
pub const MAX_SEARCH_STATES: usize = 3;
/// Largest space for constraint propagation over relation entries.
pub const MAX_PROPAGATION_STATES: usize = 6;

pub const ENV_VAR: &str = "OMCONF_MAX_N";

fn env_override() -> Option<usize> {
    static OVERRIDE: OnceLock<Option<usize>> = OnceLock::new();
    *OVERRIDE.get_or_init(|| parse_override(std::env::var(ENV_VAR).ok().as_deref()))
}

fn parse_override(raw: Option<&str>) -> Option<usize> {
    raw.and_then(|s| s.trim().parse().ok())
}

fn lowered(default: usize, over: Option<usize>) -> usize {
    over.map_or(default, |o| o.min(default))
}

/// Effective cap after applying the environment override.
pub fn cap(default: usize) -> usize {
    lowered(default, env_override())
}

/// Fails with [`Error::SizeLimit`] when `n` exceeds the effective cap.
pub fn ensure(what: &'static str, n: usize, default: usize) -> Result<()> {
    let max = cap(default);
    if n > max {
        Err(Error::SizeLimit { what, n, max })
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn override_only_lowers() {
        assert_eq!(lowered(12, parse_override(Some("4"))), 4);
        assert_eq!(lowered(12, parse_override(Some("40"))), 12);
        assert_eq!(lowered(8, parse_override(Some("junk"))), 8);
        assert_eq!(lowered(8, parse_override(None)), 8);
    }
}

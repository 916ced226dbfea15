//! Parallel sweep driver.
//!
//! Pairs are independent work items; the grid is distributed over a rayon
//! pool and the results are collected back into canonical (m, n) order,
//! so the emitted report is byte-identical for any worker count.

use rayon::prelude::*;

use bombieri_core::scan::{scan_pair, ScanRecord};
use bombieri_core::trig::{ConfigError, MinimizeConfig, MinimizeError};

/// All admissible pairs 2 <= n < m <= max_m in canonical (m, n) order.
pub fn pair_grid(max_m: u32) -> Vec<(u32, u32)> {
    let mut pairs = Vec::new();
    for m in 3..=max_m {
        for n in 2..m {
            pairs.push((m, n));
        }
    }
    pairs
}

/// Sweeps the whole grid in parallel. `threads` of `None` (or zero) uses
/// the global pool's machine default; any other value runs the sweep on a
/// dedicated pool of that size. Requires max_m >= 3.
pub fn parallel_scan(
    max_m: u32,
    cfg: &MinimizeConfig,
    tol: f64,
    threads: Option<usize>,
) -> Result<Vec<ScanRecord>, MinimizeError> {
    if max_m < 3 {
        return Err(MinimizeError::Config(ConfigError(
            "sweep bound must be at least 3",
        )));
    }
    let pairs = pair_grid(max_m);
    let sweep = || {
        pairs
            .par_iter()
            .map(|&(m, n)| scan_pair(m, n, cfg, tol))
            .collect::<Result<Vec<_>, _>>()
    };
    let mut records = match threads {
        Some(k) if k > 0 => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|_| MinimizeError::Config(ConfigError("could not build worker pool")))?
            .install(sweep),
        _ => sweep(),
    }?;
    // An indexed parallel collect already preserves input order; the sort
    // keeps the canonical-order contract independent of that detail.
    records.sort_by_key(|r| (r.m, r.n));
    Ok(records)
}

//! Monte Carlo fanned out over scoped threads.
//!
//! Trials are cut into contiguous ranges and counted independently; since
//! every trial owns its random stream, the merged count does not depend on
//! the number of workers.

use std::ops::Range;
use std::thread;

use ncmd_core::estimators::{mc_count, McEstimate};
use ncmd_core::families::Side;
use ncmd_core::{Error, FamilySpec, Result};

/// Splits `0..trials` into at most `parts` contiguous, non-empty ranges.
pub fn partitions(trials: u64, parts: usize) -> Vec<Range<u64>> {
    let parts = (parts.max(1) as u64).min(trials.max(1));
    let base = trials / parts;
    let extra = trials % parts;
    let mut out = Vec::with_capacity(parts as usize);
    let mut start = 0;
    for i in 0..parts {
        let len = base + u64::from(i < extra);
        out.push(start..start + len);
        start += len;
    }
    out
}

pub fn parallel_mc_log_tail(
    fam: &FamilySpec,
    n: u64,
    x: f64,
    side: Side,
    trials: u64,
    seed: u64,
    threads: usize,
) -> Result<McEstimate> {
    if trials == 0 {
        return Err(Error::InvalidParameter {
            target: "monte carlo".into(),
            reason: "trials must be at least 1".into(),
        });
    }
    let ranges = partitions(trials, threads);
    let counts: Vec<Result<u64>> = thread::scope(|s| {
        let handles: Vec<_> = ranges
            .into_iter()
            .map(|r| s.spawn(move || mc_count(fam, n, x, side, seed, r)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("monte carlo worker panicked")).collect()
    });
    let mut hits = 0;
    for c in counts {
        hits += c?;
    }
    Ok(McEstimate::from_counts(hits, trials, seed))
}

/// An estimator with the shape `attach_monte_carlo` expects.
pub fn estimator(
    threads: usize,
) -> impl Fn(&FamilySpec, u64, f64, Side, u64, u64) -> Result<McEstimate> {
    move |fam, n, x, side, trials, seed| parallel_mc_log_tail(fam, n, x, side, trials, seed, threads)
}

/// Worker count when none is configured.
pub fn default_threads() -> usize {
    thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

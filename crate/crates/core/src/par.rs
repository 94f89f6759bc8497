//! Thin execution helpers: data-parallel scans with a sequential fallback.
//!
//! Every reduction used here is a `min`/`sum` over a totally ordered key, so the
//! parallel and sequential paths return identical results. The `parallel` feature
//! removes the rayon dependency entirely; callers that want to force the
//! sequential path at runtime (benchmarks, determinism cross-checks) pass
//! `force_seq = true`.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Sizes the global worker pool. A no-op without the `parallel` feature.
#[cfg(feature = "parallel")]
pub fn configure_threads(n: usize) -> Result<(), String> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

#[cfg(not(feature = "parallel"))]
pub fn configure_threads(_n: usize) -> Result<(), String> {
    Ok(())
}

/// Minimum of `eval(i)` over `0..len`, skipping `None`s.
pub(crate) fn min_over<T, F>(len: usize, force_seq: bool, eval: F) -> Option<T>
where
    T: Ord + Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if !force_seq && len > 1024 {
        return (0..len).into_par_iter().filter_map(&eval).min();
    }
    let _ = force_seq;
    (0..len).filter_map(eval).min()
}

/// First index in `0..len` where `eval` returns `Some`, preferring the smallest
/// index (deterministic regardless of scheduling).
pub(crate) fn find_min_index<T, F>(len: usize, force_seq: bool, eval: F) -> Option<(usize, T)>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if !force_seq && len > 1024 {
        return (0..len)
            .into_par_iter()
            .filter_map(|i| eval(i).map(|t| (i, t)))
            .min_by_key(|(i, _)| *i);
    }
    let _ = force_seq;
    (0..len).find_map(|i| eval(i).map(|t| (i, t)))
}

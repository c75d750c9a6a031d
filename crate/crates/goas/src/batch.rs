//! Batch evaluation over independent instances.
//!
//! Verification sweeps, benchmarks and acceptance runs all map a pure
//! function over a slice of inputs.  With the `parallel` feature (on by
//! default) the map runs on rayon; without it the same code degrades to
//! a plain sequential map.  Output order always matches input order, so
//! aggregation is deterministic either way.

/// Maps `f` over `items`, in parallel when the feature allows.
#[cfg(feature = "parallel")]
pub fn map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

/// Maps `f` over `items`, in parallel when the feature allows.
#[cfg(not(feature = "parallel"))]
pub fn map<T, R>(items: &[T], f: impl Fn(&T) -> R) -> Vec<R> {
    items.iter().map(f).collect()
}

/// The sequential reference path, for comparing against [`map`].
pub fn map_sequential<T, R>(items: &[T], f: impl Fn(&T) -> R) -> Vec<R> {
    items.iter().map(f).collect()
}

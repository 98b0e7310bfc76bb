//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (default) the inner loops of graph sums,
//! exhaustive scans, and series convolutions run on rayon. Without it the
//! same helpers degrade to plain iterators, which is useful for profiling
//! and for minimal builds. Results are independent of the execution mode:
//! every reduction collects in input order before folding.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `items` and returns the results in input order.
#[cfg(feature = "parallel")]
pub fn map_collect<I, O, F>(items: Vec<I>, f: F) -> Vec<O>
where
    I: Send,
    O: Send,
    F: Fn(I) -> O + Sync + Send,
{
    items.into_par_iter().map(f).collect()
}

/// Maps `items` and returns the results in input order.
#[cfg(not(feature = "parallel"))]
pub fn map_collect<I, O, F>(items: Vec<I>, f: F) -> Vec<O>
where
    F: Fn(I) -> O,
{
    items.into_iter().map(f).collect()
}

/// Sequential reference implementation of [`map_collect`], kept available
/// in all builds so benchmarks can compare both paths in one binary.
pub fn map_collect_seq<I, O, F>(items: Vec<I>, f: F) -> Vec<O>
where
    F: Fn(I) -> O,
{
    items.into_iter().map(f).collect()
}

//! Internal helpers that run counting loops either on rayon (default
//! `parallel` feature) or sequentially, with merges chosen so the result is
//! identical in both modes and independent of thread count:
//!
//! * sums are associative/commutative,
//! * collected vectors preserve input order (per-item buckets are flattened
//!   in index order),
//! * maxima are taken over a total order, so ties break identically.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub(crate) fn sum_map_u64<T, F>(items: &[T], f: F) -> u64
where
    T: Sync,
    F: Fn(&T) -> u64 + Send + Sync,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).sum()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).sum()
    }
}

/// Map each item to a bucket of results and flatten in item order.
pub(crate) fn flat_map_ordered<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Vec<U> + Send + Sync,
{
    let buckets: Vec<Vec<U>> = {
        #[cfg(feature = "parallel")]
        {
            items.par_iter().map(f).collect()
        }
        #[cfg(not(feature = "parallel"))]
        {
            items.iter().map(f).collect()
        }
    };
    buckets.into_iter().flatten().collect()
}

/// Maximum of a totally ordered key over all items (`None` when empty).
/// The total order makes the parallel reduction deterministic.
pub(crate) fn max_map<T, K, F>(items: &[T], f: F) -> Option<K>
where
    T: Sync,
    K: Ord + Send,
    F: Fn(&T) -> K + Send + Sync,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).max()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).max()
    }
}

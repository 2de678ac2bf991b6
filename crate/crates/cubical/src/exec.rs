//! Execution backend: the heavy enumeration kernels run on rayon when the
//! `parallel` feature is enabled and on plain iterators otherwise. All
//! combinators are order-stable so results are identical either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub(crate) fn backend() -> &'static str {
    if cfg!(feature = "parallel") {
        "rayon"
    } else {
        "sequential"
    }
}

/// Order-preserving map over a slice.
#[cfg(feature = "parallel")]
pub(crate) fn map_collect<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_collect<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// First item (in slice order) whose image is `Some`.
#[cfg(feature = "parallel")]
pub(crate) fn find_map_first<T, U, F>(items: &[T], f: F) -> Option<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Option<U> + Sync + Send,
{
    items.par_iter().find_map_first(f)
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn find_map_first<T, U, F>(items: &[T], f: F) -> Option<U>
where
    F: Fn(&T) -> Option<U>,
{
    items.iter().find_map(f)
}

/// Maximum of `f` over indices `0..n` (None when `n == 0`).
#[cfg(feature = "parallel")]
pub(crate) fn max_over<U, F>(n: usize, f: F) -> Option<U>
where
    U: Ord + Send,
    F: Fn(usize) -> U + Sync + Send,
{
    (0..n).into_par_iter().map(f).max()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn max_over<U, F>(n: usize, f: F) -> Option<U>
where
    U: Ord,
    F: Fn(usize) -> U,
{
    (0..n).map(f).max()
}

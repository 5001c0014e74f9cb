//! Suite-level fan-out: map a function over items, in parallel when the
//! `parallel` feature is enabled and requested. Output order always equals
//! input order, so reports are identical either way.

#[cfg(feature = "parallel")]
pub(crate) fn default_parallel() -> bool {
    true
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn default_parallel() -> bool {
    false
}

#[cfg(feature = "parallel")]
pub(crate) fn map_collect<T, R, F>(items: &[T], parallel: bool, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    use rayon::prelude::*;
    if parallel {
        items.par_iter().map(&f).collect()
    } else {
        items.iter().map(f).collect()
    }
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_collect<T, R, F>(items: &[T], _parallel: bool, f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

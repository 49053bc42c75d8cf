//! Data-parallel map helper. With the `parallel` feature (default) the work
//! fans out over rayon; otherwise it runs sequentially. Output order matches
//! input order in both cases, so reports stay byte-identical.

#[cfg(feature = "parallel")]
pub fn map_range<R, F>(len: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    use rayon::prelude::*;
    (0..len).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_range<R, F>(len: usize, f: F) -> Vec<R>
where
    F: Fn(usize) -> R,
{
    (0..len).map(f).collect()
}

/// Sequential reference path, kept alongside the parallel one for the
/// benchmark comparison.
pub fn map_range_seq<R, F>(len: usize, f: F) -> Vec<R>
where
    F: Fn(usize) -> R,
{
    (0..len).map(f).collect()
}

//! Data-parallel map over an index range.
//!
//! With the `parallel` feature (default) the work is distributed by rayon;
//! without it the same closure runs sequentially. Results are collected in
//! index order either way, so reductions downstream are bit-identical across
//! thread counts.

#[cfg(feature = "parallel")]
pub fn indexed_map<T, F>(count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..count).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn indexed_map<T, F>(count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..count).map(f).collect()
}

/// Cap the global worker pool. Returns false if the pool was already built
/// (rayon allows configuring it only once per process).
#[cfg(feature = "parallel")]
pub fn set_threads(n: usize) -> bool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .is_ok()
}

#[cfg(not(feature = "parallel"))]
pub fn set_threads(_n: usize) -> bool {
    true
}

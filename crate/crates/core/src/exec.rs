//! Data-parallel driver for scans and studies.
//!
//! With the default `parallel` feature the indexed maps fan out through
//! rayon; without it they degrade to plain sequential loops. The
//! sequential path is always compiled (the bench suite compares both).

/// Applies `f` to 0..count, collecting results in index order.
#[cfg(feature = "parallel")]
pub fn map_indexed<T, F>(count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..count).into_par_iter().map(f).collect()
}

/// Applies `f` to 0..count, collecting results in index order.
#[cfg(not(feature = "parallel"))]
pub fn map_indexed<T, F>(count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    map_indexed_seq(count, f)
}

/// Sequential reference implementation of [`map_indexed`].
pub fn map_indexed_seq<T, F>(count: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..count).map(f).collect()
}

/// Runs `job` inside a worker pool of the given size. `None` keeps the
/// default pool. Without the `parallel` feature the worker count is
/// irrelevant and the job runs directly.
#[cfg(feature = "parallel")]
pub fn with_workers<T, F>(workers: Option<usize>, job: F) -> T
where
    T: Send,
    F: FnOnce() -> T + Send,
{
    match workers {
        Some(n) if n >= 1 => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("worker pool construction")
            .install(job),
        _ => job(),
    }
}

/// Runs `job` inside a worker pool of the given size. `None` keeps the
/// default pool. Without the `parallel` feature the worker count is
/// irrelevant and the job runs directly.
#[cfg(not(feature = "parallel"))]
pub fn with_workers<T, F>(_workers: Option<usize>, job: F) -> T
where
    T: Send,
    F: FnOnce() -> T + Send,
{
    job()
}

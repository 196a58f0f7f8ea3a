//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature the `Parallel` mode runs on rayon; without it
//! every mode runs sequentially. Results always come back in index order.

/// How index-parallel work is scheduled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

/// `(0..n).map(f)`, collected in order.
pub fn map_range<T, F>(exec: Execution, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..n).into_par_iter().map(f).collect()
        }
        _ => (0..n).map(f).collect(),
    }
}

/// `map_range` for fallible work; the first error in index order wins.
pub fn try_map_range<T, E, F>(exec: Execution, n: usize, f: F) -> Result<Vec<T>, E>
where
    T: Send,
    E: Send,
    F: Fn(usize) -> Result<T, E> + Sync + Send,
{
    map_range(exec, n, f).into_iter().collect()
}

/// Runs `f` on a pool with `threads` workers. Without the `parallel`
/// feature this simply calls `f`.
pub fn with_threads<R, F>(threads: usize, f: F) -> R
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    #[cfg(feature = "parallel")]
    {
        if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            return pool.install(f);
        }
    }
    let _ = threads;
    f()
}

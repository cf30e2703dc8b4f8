//! Data-parallel helpers. With the `parallel` feature these run on rayon;
//! without it they fall back to plain sequential iterators with identical
//! results.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// `f` applied to every integer in `lo..hi`, in order.
pub fn map_range<T, F>(lo: u64, hi: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (lo..hi).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (lo..hi).map(f).collect()
    }
}

/// `f` applied to every element of `items`, in order.
pub fn map_slice<I, T, F>(items: &[I], f: F) -> Vec<T>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Whether work can actually fan out across threads in this build.
pub const fn enabled() -> bool {
    cfg!(feature = "parallel")
}

//! Data-parallel helpers with a sequential fallback.
//!
//! The `parallel` feature (on by default) routes the public entry points
//! through rayon. Both code paths are always compiled so the benchmark
//! suite can compare them directly; results are deterministic and do not
//! depend on thread count (order-preserving map, associative reductions).

/// Order-preserving map, sequential implementation.
pub fn map_seq<T: Sync, U: Send, F: Fn(&T) -> U + Sync + Send>(items: &[T], f: F) -> Vec<U> {
    items.iter().map(|x| f(x)).collect()
}

/// Order-preserving map, rayon implementation.
#[cfg(feature = "parallel")]
pub fn map_par<T: Sync, U: Send, F: Fn(&T) -> U + Sync + Send>(items: &[T], f: F) -> Vec<U> {
    use rayon::prelude::*;
    items.par_iter().map(|x| f(x)).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_par<T: Sync, U: Send, F: Fn(&T) -> U + Sync + Send>(items: &[T], f: F) -> Vec<U> {
    map_seq(items, f)
}

/// Default dispatch used by the library.
pub fn map<T: Sync, U: Send, F: Fn(&T) -> U + Sync + Send>(items: &[T], f: F) -> Vec<U> {
    #[cfg(feature = "parallel")]
    {
        map_par(items, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_seq(items, f)
    }
}

/// Map over an index range.
pub fn map_range<U: Send, F: Fn(usize) -> U + Sync + Send>(n: usize, f: F) -> Vec<U> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Sequential variant of [`map_range`], exposed for the benches.
pub fn map_range_seq<U: Send, F: Fn(usize) -> U + Sync + Send>(n: usize, f: F) -> Vec<U> {
    (0..n).map(f).collect()
}

/// First index in canonical (ascending) order whose image is `Some`,
/// together with the value. Deterministic regardless of thread count.
pub fn find_first_range<U: Send, F: Fn(usize) -> Option<U> + Sync + Send>(
    n: usize,
    f: F,
) -> Option<(usize, U)> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..n)
            .into_par_iter()
            .filter_map(|i| f(i).map(|u| (i, u)))
            .min_by_key(|(i, _)| *i)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).find_map(|i| f(i).map(|u| (i, u)))
    }
}

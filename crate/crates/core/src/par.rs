// Data-parallel helpers. With the `parallel` feature these run on rayon;
// without it they are plain iterator loops with identical results.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[cfg(feature = "parallel")]
pub(crate) fn any<T: Sync>(items: &[T], f: impl Fn(&T) -> bool + Sync + Send) -> bool {
    items.par_iter().any(f)
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn any<T: Sync>(items: &[T], f: impl Fn(&T) -> bool + Sync + Send) -> bool {
    items.iter().any(f)
}

/// First `Some` in index order, same as the sequential `find_map`.
#[cfg(feature = "parallel")]
pub(crate) fn find_map_first<R: Send>(
    len: usize,
    f: impl Fn(usize) -> Option<R> + Sync + Send,
) -> Option<R> {
    (0..len).into_par_iter().find_map_first(f)
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn find_map_first<R: Send>(
    len: usize,
    f: impl Fn(usize) -> Option<R> + Sync + Send,
) -> Option<R> {
    (0..len).find_map(f)
}

pub fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}

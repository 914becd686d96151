//! Execution mode for the data-parallel inner loops.
//!
//! With the `parallel` feature (default) the [`Exec::Parallel`] mode runs on
//! rayon's global pool; without it every mode runs sequentially. Both modes
//! return identical results in identical order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// The mode that will actually run, after accounting for the feature flag.
    pub fn effective(self) -> Exec {
        if cfg!(feature = "parallel") {
            self
        } else {
            Exec::Sequential
        }
    }
}

/// Order-preserving map.
pub(crate) fn map<T, R, F>(exec: Exec, items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Send + Sync,
{
    match exec.effective() {
        #[cfg(feature = "parallel")]
        Exec::Parallel => items.into_par_iter().map(f).collect(),
        _ => items.into_iter().map(f).collect(),
    }
}

/// First `Some` in input order.
pub(crate) fn find_map_first<T, R, F>(exec: Exec, items: Vec<T>, f: F) -> Option<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> Option<R> + Send + Sync,
{
    match exec.effective() {
        #[cfg(feature = "parallel")]
        Exec::Parallel => items.into_par_iter().find_map_first(f),
        _ => items.into_iter().find_map(f),
    }
}

/// Every permutation of `0..n` whose first image is `first`, in
/// lexicographic order, passed to `visit`.
pub(crate) fn for_each_perm_with_first(n: usize, first: usize, mut visit: impl FnMut(&[u32])) {
    let mut rest: Vec<u32> = (0..n as u32).filter(|&x| x as usize != first).collect();
    let mut images = vec![first as u32];
    images.extend_from_slice(&rest);
    visit(&images);
    while next_permutation(&mut rest) {
        images[1..].copy_from_slice(&rest);
        visit(&images);
    }
}

fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

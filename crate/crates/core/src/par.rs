//! Execution strategy for the embarrassingly parallel loops (tuple
//! enumeration, sandwich search, verification sweeps).
//!
//! Every helper returns the same result under either strategy: searches
//! report the first hit in sequential order.

use serde::Serialize;

/// Enumeration budget used when `GLK_BUDGET` is unset or unparsable.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// The enumeration budget, `GLK_BUDGET` if set.
pub fn default_budget() -> u128 {
    std::env::var("GLK_BUDGET")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// First index in `0..n` (in increasing order) where `f` yields `Some`.
    pub fn find_first<T, F>(self, n: usize, f: F) -> Option<(usize, T)>
    where
        T: Send,
        F: Fn(usize) -> Option<T> + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                (0..n)
                    .into_par_iter()
                    .filter_map(|i| f(i).map(|t| (i, t)))
                    .find_first(|_| true)
            }
            _ => (0..n).find_map(|i| f(i).map(|t| (i, t))),
        }
    }

    /// Variant of [`Exec::find_first`] over a `u128` range, chunked.
    pub fn find_first_u128<T, F>(self, n: u128, f: F) -> Option<(u128, T)>
    where
        T: Send,
        F: Fn(u128) -> Option<T> + Sync + Send,
    {
        const CHUNK: u128 = 1 << 12;
        let chunks = n.div_ceil(CHUNK);
        let scan = |c: u128| {
            let lo = c * CHUNK;
            let hi = (lo + CHUNK).min(n);
            (lo..hi).find_map(|i| f(i).map(|t| (i, t)))
        };
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel if chunks <= usize::MAX as u128 => {
                use rayon::prelude::*;
                (0..chunks as usize)
                    .into_par_iter()
                    .filter_map(|c| scan(c as u128))
                    .find_first(|_| true)
            }
            _ => (0..chunks).find_map(scan),
        }
    }

    /// All values `f(i)` that are `Some`, in index order.
    pub fn filter_map_u128<T, F>(self, n: u128, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u128) -> Option<T> + Sync + Send,
    {
        const CHUNK: u128 = 1 << 12;
        let chunks = n.div_ceil(CHUNK);
        let scan = |c: u128| {
            let lo = c * CHUNK;
            let hi = (lo + CHUNK).min(n);
            (lo..hi).filter_map(&f).collect::<Vec<T>>()
        };
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel if chunks <= usize::MAX as u128 => {
                use rayon::prelude::*;
                (0..chunks as usize)
                    .into_par_iter()
                    .map(|c| scan(c as u128))
                    .collect::<Vec<_>>()
                    .into_iter()
                    .flatten()
                    .collect()
            }
            _ => (0..chunks).flat_map(scan).collect(),
        }
    }

    /// `f` applied to `0..n`, results in index order.
    pub fn map<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                (0..n).into_par_iter().map(f).collect()
            }
            _ => (0..n).map(f).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        for exec in [Exec::Sequential, Exec::Parallel] {
            let hit = exec.find_first(1000, |i| (i % 97 == 96).then_some(i * 2));
            assert_eq!(hit, Some((96, 192)));
            let hit = exec.find_first_u128(100_000, |i| (i > 50_000 && i % 7 == 0).then_some(()));
            assert_eq!(hit.map(|h| h.0), Some(50_001 + (7 - 50_001 % 7) % 7));
            let evens = exec.filter_map_u128(10_000, |i| (i % 2 == 0).then_some(i));
            assert_eq!(evens.len(), 5000);
            assert!(evens.windows(2).all(|w| w[0] < w[1]));
            assert_eq!(exec.map(5, |i| i * i), vec![0, 1, 4, 9, 16]);
        }
    }
}

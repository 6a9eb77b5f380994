//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (default) [`Exec::Parallel`] runs on rayon;
//! without it every call runs sequentially. Results never depend on the
//! executor: maps preserve index order and searches return the lowest index.

use std::ops::Range;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Exec {
    Serial,
    #[default]
    Parallel,
}

impl Exec {
    /// True when this executor actually fans out to worker threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    pub fn map<T, F>(self, range: Range<usize>, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return range.into_par_iter().map(f).collect();
        }
        range.map(f).collect()
    }

    /// The first index (lowest, not earliest finished) whose result is `Some`.
    pub fn find_map_first<T, F>(self, range: Range<usize>, f: F) -> Option<T>
    where
        T: Send,
        F: Fn(usize) -> Option<T> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return range.into_par_iter().find_map_first(f);
        }
        range.into_iter().find_map(f)
    }

    /// Folds per-index contributions with an associative, commutative `merge`.
    pub fn fold<T, F, M>(
        self,
        range: Range<usize>,
        identity: impl Fn() -> T + Sync + Send,
        f: F,
        merge: M,
    ) -> T
    where
        T: Send,
        F: Fn(T, usize) -> T + Sync + Send,
        M: Fn(T, T) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return range
                .into_par_iter()
                .fold(&identity, &f)
                .reduce(&identity, &merge);
        }
        let _ = &merge;
        range.fold(identity(), f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn executors_agree() {
        for exec in [Exec::Serial, Exec::Parallel] {
            assert_eq!(exec.map(0..5, |i| i * i), vec![0, 1, 4, 9, 16]);
            assert_eq!(
                exec.find_map_first(0..1000, |i| (i % 7 == 3).then_some(i)),
                Some(3)
            );
            assert_eq!(
                exec.fold(0..100, || 0usize, |acc, i| acc + i, |a, b| a + b),
                4950
            );
        }
    }
}

//! Execution strategy for the data-parallel inner loops.
//!
//! Every hot loop in the crate (Cayley rows, class coefficients, random
//! trials, search subtrees) goes through [`Exec::map`]. With the `parallel`
//! feature the work is spread over the current rayon pool; without it, or
//! with [`Exec::Sequential`], the same closure runs in index order. Results
//! are always returned in index order, so reductions over them do not depend
//! on the schedule.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[derive(Default)]
pub enum Exec {
    Sequential,
    #[cfg(feature = "parallel")]
    #[default]
    Parallel,
}


impl Exec {
    /// Picks the strategy for a worker count; one worker means sequential.
    pub fn for_workers(workers: usize) -> Self {
        if workers <= 1 {
            Exec::Sequential
        } else {
            Exec::default()
        }
    }

    pub fn map<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            Exec::Sequential => (0..n).map(f).collect(),
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                (0..n).into_par_iter().map(f).collect()
            }
        }
    }

    pub fn is_parallel(self) -> bool {
        self != Exec::Sequential
    }
}

/// Runs `f` on a pool with the requested number of workers.
///
/// Without the `parallel` feature this just calls `f`.
pub fn with_workers<R: Send>(workers: usize, f: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    {
        if workers > 1 {
            if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
                return pool.install(f);
            }
        }
        f()
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = workers;
        f()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_preserves_order() {
        let seq = Exec::Sequential.map(100, |i| i * i);
        let def = Exec::default().map(100, |i| i * i);
        assert_eq!(seq, def);
        assert_eq!(seq[7], 49);
    }

    #[test]
    fn one_worker_is_sequential() {
        assert_eq!(Exec::for_workers(1), Exec::Sequential);
        assert_eq!(Exec::for_workers(0), Exec::Sequential);
    }
}

//! Order-stable data-parallel map. With the `parallel` feature off every
//! call runs sequentially.

use serde::{Deserialize, Serialize};

/// How independent work items are dispatched.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum Execution {
    Sequential,
    /// Worker pool of `jobs` threads; `None` means available parallelism.
    #[default]
    Parallel,
    Jobs {
        jobs: usize,
    },
}

impl Execution {
    pub fn with_jobs(jobs: Option<usize>) -> Self {
        match jobs {
            None => Execution::Parallel,
            Some(0 | 1) => Execution::Sequential,
            Some(jobs) => Execution::Jobs { jobs },
        }
    }

    /// Whether this build can actually run work on more than one thread.
    pub fn available() -> bool {
        cfg!(feature = "parallel")
    }
}

/// `items.iter().map(f).collect()`, possibly on a worker pool. The output
/// order always matches the input order.
pub fn par_map<T, U, F>(items: &[T], exec: Execution, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    match exec {
        Execution::Sequential => items.iter().map(f).collect(),
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        #[cfg(feature = "parallel")]
        Execution::Jobs { jobs } => {
            use rayon::prelude::*;
            match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
                Ok(pool) => pool.install(|| items.par_iter().map(f).collect()),
                Err(_) => items.iter().map(f).collect(),
            }
        }
        #[cfg(not(feature = "parallel"))]
        _ => items.iter().map(f).collect(),
    }
}

/// Pairwise summation in a fixed tree shape, so results do not depend on
/// how the summands were produced.
pub fn pairwise_sum<U, F>(items: &[U], zero: &U, add: &F) -> U
where
    U: Clone,
    F: Fn(&U, &U) -> U,
{
    match items.len() {
        0 => zero.clone(),
        1 => items[0].clone(),
        len => {
            let (a, b) = items.split_at(len / 2);
            add(&pairwise_sum(a, zero, add), &pairwise_sum(b, zero, add))
        }
    }
}

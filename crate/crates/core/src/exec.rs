//! Execution schedule for the data-parallel inner loops.
//!
//! Every per-cell and per-job loop goes through these helpers. With the
//! `parallel` feature they dispatch to rayon; without it (or with
//! [`Schedule::Sequential`]) they run in order on the calling thread. Results
//! never depend on the schedule: callers only hand in closures whose output is
//! a function of the item index and the item itself.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Smallest per-task slice of cheap per-cell work; keeps rayon's split
/// overhead below the cost of the work itself.
const MIN_CELLS_PER_TASK: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Schedule {
    Sequential,
    #[default]
    Parallel,
}

impl Schedule {
    /// True when work will actually be spread over the rayon pool.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Schedule::Parallel
    }
}

/// Applies `f` to every element of `items` in place.
pub fn for_each_mut<T, F>(schedule: Schedule, items: &mut [T], f: F)
where
    T: Send,
    F: Fn(usize, &mut T) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if schedule.is_parallel() {
        items.par_iter_mut().with_min_len(MIN_CELLS_PER_TASK).enumerate().for_each(|(i, t)| f(i, t));
        return;
    }
    let _ = schedule;
    items.iter_mut().enumerate().for_each(|(i, t)| f(i, t));
}

/// Fills `out` with `f(i)`.
pub fn fill<T, F>(schedule: Schedule, out: &mut [T], f: F)
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    for_each_mut(schedule, out, |i, slot| *slot = f(i));
}

/// Maps `f` over `0..n`, preserving index order in the output.
pub fn map_range<T, F>(schedule: Schedule, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if schedule.is_parallel() {
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = schedule;
    (0..n).map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schedules_agree() {
        let a = map_range(Schedule::Sequential, 1000, |i| (i as f64).sqrt());
        let b = map_range(Schedule::Parallel, 1000, |i| (i as f64).sqrt());
        assert_eq!(a, b);
        let mut x = vec![0u64; 257];
        for_each_mut(Schedule::Parallel, &mut x, |i, v| *v = (i * i) as u64);
        assert!(x.iter().enumerate().all(|(i, v)| *v == (i * i) as u64));
    }
}

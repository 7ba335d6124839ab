//! Deterministic work partitioning for exhaustive scans.

/// Scans shorter than this run serially regardless of the worker count;
/// spawning threads costs more than the work itself.
const SPAWN_THRESHOLD: u64 = 1 << 14;

/// Splits `[0, total)` into at most `jobs` contiguous chunks, runs `work`
/// on each, and returns the per-chunk results in chunk order. Callers must
/// combine results with an order-insensitive reduction (min/max/sum over a
/// total order) so the outcome is identical for every worker count.
pub fn run_chunked<T, F>(total: u64, jobs: usize, work: F) -> Vec<T>
where
    F: Fn(u64, u64) -> T + Sync,
    T: Send,
{
    if jobs <= 1 || total < SPAWN_THRESHOLD {
        return vec![work(0, total)];
    }
    let jobs = jobs.min(total as usize);
    let chunk = total.div_ceil(jobs as u64);
    std::thread::scope(|scope| {
        let work = &work;
        let handles: Vec<_> = (0..jobs)
            .map(|j| {
                let lo = (j as u64 * chunk).min(total);
                let hi = ((j as u64 + 1) * chunk).min(total);
                scope.spawn(move || work(lo, hi))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chunks_cover_range_exactly_once() {
        for total in [0u64, 1, 7, 64, 1000] {
            for jobs in [1usize, 2, 3, 8, 17] {
                let counts = run_chunked(total, jobs, |lo, hi| hi - lo);
                let sum: u64 = counts.iter().sum();
                assert_eq!(sum, total);
            }
        }
    }
}

//! Static round-robin sharding over scoped worker threads.

use std::thread;

/// Applies `f` to every item with `workers` threads. Worker `w` handles the
/// items at indices `w, w + workers, ...`; results come back in input order,
/// so the output never depends on the worker count.
pub fn map_sharded<T, U, F>(items: &[T], workers: usize, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync,
{
    let workers = workers.max(1).min(items.len().max(1));
    if workers == 1 {
        return items.iter().map(&f).collect();
    }
    let f = &f;
    let mut shards: Vec<Vec<(usize, U)>> = thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                scope.spawn(move || {
                    (w..items.len())
                        .step_by(workers)
                        .map(|i| (i, f(&items[i])))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    let mut slots: Vec<Option<U>> = (0..items.len()).map(|_| None).collect();
    for shard in shards.iter_mut() {
        for (i, u) in shard.drain(..) {
            slots[i] = Some(u);
        }
    }
    slots.into_iter().map(|u| u.expect("every index mapped")).collect()
}

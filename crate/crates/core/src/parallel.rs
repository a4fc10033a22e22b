//! Deterministic ordered fan-out over indexed work units.
//!
//! Work units are pure functions of their index, workers claim indices from
//! an atomic dispenser, and a single merger consumes results strictly in
//! index order — so the consumed sequence (and anything derived from it) is
//! byte-identical for any worker count, including one. A bounded in-flight
//! window keeps memory proportional to the worker count rather than the
//! total unit count.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Condvar, Mutex};

use crate::error::Result;

struct State<T> {
    ready: BTreeMap<u64, Result<T>>,
    committed: u64,
    stop: bool,
}

/// Runs `produce(0..units)` on `threads` workers and feeds the results to
/// `consume` in ascending index order. `consume` returning `Ok(false)`
/// stops the run early (remaining units are abandoned); errors from either
/// closure abort the run and are reported from the lowest erring index.
pub fn ordered_chunks<T, F, C>(units: u64, threads: usize, produce: F, mut consume: C) -> Result<()>
where
    T: Send,
    F: Fn(u64) -> Result<T> + Sync,
    C: FnMut(u64, T) -> Result<bool>,
{
    if units == 0 {
        return Ok(());
    }
    let threads = threads.max(1).min(units.min(256) as usize);
    if threads == 1 {
        for i in 0..units {
            if !consume(i, produce(i)?)? {
                return Ok(());
            }
        }
        return Ok(());
    }

    let window = (threads as u64) * 4;
    let next = AtomicU64::new(0);
    let state = Mutex::new(State::<T> {
        ready: BTreeMap::new(),
        committed: 0,
        stop: false,
    });
    let produced = Condvar::new();
    let space = Condvar::new();

    std::thread::scope(|scope| -> Result<()> {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= units {
                    break;
                }
                // Backpressure: stay within `window` of the merge frontier.
                {
                    let mut g = state.lock().unwrap();
                    while !g.stop && i >= g.committed + window {
                        g = space.wait(g).unwrap();
                    }
                    if g.stop {
                        break;
                    }
                }
                let result = produce(i);
                let mut g = state.lock().unwrap();
                let failed = result.is_err();
                g.ready.insert(i, result);
                produced.notify_all();
                if failed {
                    // Let the merger surface it at its ordered position.
                    break;
                }
            });
        }

        // Merge strictly in order on this thread.
        let mut outcome = Ok(());
        for i in 0..units {
            let item = {
                let mut g = state.lock().unwrap();
                loop {
                    if let Some(r) = g.ready.remove(&i) {
                        break r;
                    }
                    g = produced.wait(g).unwrap();
                }
            };
            let keep_going = match item.and_then(|value| consume(i, value)) {
                Ok(k) => k,
                Err(e) => {
                    outcome = Err(e);
                    false
                }
            };
            let mut g = state.lock().unwrap();
            g.committed = i + 1;
            if !keep_going {
                g.stop = true;
                produced.notify_all();
                space.notify_all();
                break;
            }
            space.notify_all();
        }
        // Unblock any workers still waiting before the scope joins them.
        state.lock().unwrap().stop = true;
        space.notify_all();
        outcome
    })
}

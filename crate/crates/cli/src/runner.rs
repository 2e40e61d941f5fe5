//! Per-instance timeouts and a small worker pool.

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::{mpsc, Arc, Mutex};
use std::thread;
use std::time::Duration;

/// Runs `f` on its own thread and waits at most `timeout`. A computation
/// that times out is abandoned; it cannot be interrupted and keeps running
/// until the process exits.
pub fn with_timeout<T, F>(timeout: Option<Duration>, f: F) -> Option<T>
where
    T: Send + 'static,
    F: FnOnce() -> T + Send + 'static,
{
    let Some(limit) = timeout else {
        return Some(f());
    };
    let (tx, rx) = mpsc::channel();
    thread::spawn(move || {
        let _ = tx.send(f());
    });
    rx.recv_timeout(limit).ok()
}

pub struct Batch<T> {
    /// Results in input order; `None` for instances not completed.
    pub results: Vec<Option<T>>,
    /// Index of an instance that hit the timeout, if any.
    pub timed_out: Option<usize>,
}

/// Runs `f` on every item with up to `jobs` workers. After the first
/// timeout no new instances are started.
pub fn run_all<I, T, F>(items: Vec<I>, jobs: usize, timeout: Option<Duration>, f: F) -> Batch<T>
where
    I: Clone + Send + Sync + 'static,
    T: Send + 'static,
    F: Fn(I) -> T + Send + Sync + 'static,
{
    let n = items.len();
    let items = Arc::new(items);
    let f = Arc::new(f);
    let next = Arc::new(AtomicUsize::new(0));
    let stop = Arc::new(AtomicBool::new(false));
    let slots: Arc<Mutex<Vec<Option<T>>>> = Arc::new(Mutex::new((0..n).map(|_| None).collect()));
    let timed_out: Arc<Mutex<Option<usize>>> = Arc::new(Mutex::new(None));
    let workers = jobs.max(1).min(n.max(1));
    let handles: Vec<_> = (0..workers)
        .map(|_| {
            let (items, f, next, stop, slots, timed_out) =
                (items.clone(), f.clone(), next.clone(), stop.clone(), slots.clone(), timed_out.clone());
            thread::spawn(move || loop {
                if stop.load(Ordering::SeqCst) {
                    break;
                }
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= items.len() {
                    break;
                }
                let item = items[i].clone();
                let g = f.clone();
                match with_timeout(timeout, move || g(item)) {
                    Some(r) => slots.lock().unwrap()[i] = Some(r),
                    None => {
                        stop.store(true, Ordering::SeqCst);
                        let mut t = timed_out.lock().unwrap();
                        *t = Some(t.map_or(i, |j| j.min(i)));
                    }
                }
            })
        })
        .collect();
    for h in handles {
        h.join().expect("worker panicked");
    }
    let results = std::mem::take(&mut *slots.lock().unwrap());
    let timed_out = *timed_out.lock().unwrap();
    Batch { results, timed_out }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keeps_input_order() {
        let b = run_all((0..20).collect(), 4, None, |i: u64| i * i);
        assert_eq!(b.timed_out, None);
        assert_eq!(b.results, (0..20).map(|i| Some(i * i)).collect::<Vec<_>>());
    }

    #[test]
    fn reports_timeouts() {
        let b = run_all(vec![0u64, 1, 2], 1, Some(Duration::from_millis(50)), |i| {
            if i == 1 {
                thread::sleep(Duration::from_secs(5));
            }
            i
        });
        assert_eq!(b.timed_out, Some(1));
        assert_eq!(b.results[0], Some(0));
        assert_eq!(b.results[2], None);
    }
}

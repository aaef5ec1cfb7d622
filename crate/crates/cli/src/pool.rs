//! Bounded worker pool for per-item check dispatch.
//!
//! Items are claimed off a shared cursor; every produced row is stamped with
//! the wall-clock cost of its originating call. Collection order varies with
//! scheduling, so callers sort before emission; the worker count never
//! changes report content.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use crate::rows::ReportRow;
use supercong_core::report::CongruenceReport;

pub fn default_workers() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

/// Apply `f` to every item on `workers` threads and collect all rows.
pub fn par_map<T, F>(items: &[T], workers: usize, f: F) -> Vec<ReportRow>
where
    T: Sync,
    F: Fn(&T) -> Vec<CongruenceReport> + Sync,
{
    let workers = workers.max(1).min(items.len().max(1));
    let cursor = AtomicUsize::new(0);
    let sink: Mutex<Vec<ReportRow>> = Mutex::new(Vec::new());

    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| {
                let mut local = Vec::new();
                loop {
                    let i = cursor.fetch_add(1, Ordering::Relaxed);
                    if i >= items.len() {
                        break;
                    }
                    let start = Instant::now();
                    let reports = f(&items[i]);
                    let micros = start.elapsed().as_micros() as u64;
                    for r in reports {
                        local.push(ReportRow::from_report(r, micros));
                    }
                }
                sink.lock().unwrap().extend(local);
            });
        }
    });

    sink.into_inner().unwrap()
}

//! Search configuration and the deterministic partition/merge driver.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use crate::error::{Error, Result};

/// Default ceiling on the estimated number of elementary F_p operations.
pub const DEFAULT_WORK_LIMIT: f64 = 1e11;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Strategy {
    /// All q^r coefficient tuples in reflected base-p Gray order, one generator
    /// row added per step.
    Gray,
    /// One representative per leading-coefficient class under
    /// f -> c * sigma(f)(lambda x), evaluated through the trace tables.
    #[default]
    Orbit,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Gray => "gray",
            Strategy::Orbit => "orbit",
        })
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gray" => Ok(Strategy::Gray),
            "orbit" => Ok(Strategy::Orbit),
            other => Err(Error::InvalidArgument(format!("unknown strategy {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchOptions {
    pub strategy: Strategy,
    pub threads: usize,
    /// Estimated-work ceiling; `f64::INFINITY` disables the guard.
    pub work_limit: f64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            strategy: Strategy::Orbit,
            threads: 1,
            work_limit: DEFAULT_WORK_LIMIT,
        }
    }
}

impl SearchOptions {
    pub fn new(strategy: Strategy, threads: usize) -> Self {
        SearchOptions {
            strategy,
            threads,
            ..Default::default()
        }
    }

    pub fn unbounded(mut self) -> Self {
        self.work_limit = f64::INFINITY;
        self
    }

    pub(crate) fn check_work(&self, estimate: f64) -> Result<()> {
        if estimate > self.work_limit {
            Err(Error::Infeasible {
                estimate,
                limit: self.work_limit,
            })
        } else {
            Ok(())
        }
    }
}

/// Split `range` into contiguous chunks, evaluate them on up to `threads`
/// workers, and return the per-chunk results in chunk order.
///
/// Callers merge with an order-insensitive reduction, so the outcome does not
/// depend on the thread count or on scheduling.
pub(crate) fn run_partitioned<R, F>(range: Range<u64>, threads: usize, work: F) -> Vec<R>
where
    R: Send,
    F: Fn(Range<u64>) -> R + Sync,
{
    let len = range.end.saturating_sub(range.start);
    if len == 0 {
        return Vec::new();
    }
    let threads = threads.max(1);
    let chunks = ((threads as u64) * 16).min(len).max(1);
    let bounds: Vec<Range<u64>> = (0..chunks)
        .map(|i| {
            let lo = range.start + len * i / chunks;
            let hi = range.start + len * (i + 1) / chunks;
            lo..hi
        })
        .collect();
    if threads == 1 {
        return bounds.into_iter().map(work).collect();
    }

    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<R>>> = bounds.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..threads.min(bounds.len()) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(r) = bounds.get(i) else { break };
                let out = work(r.clone());
                *slots[i].lock().unwrap() = Some(out);
            });
        }
    });
    slots
        .into_iter()
        .map(|s| s.into_inner().unwrap().expect("every chunk was processed"))
        .collect()
}

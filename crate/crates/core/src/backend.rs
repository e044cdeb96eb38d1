//! Serial and data-parallel execution of per-cell stencil kernels.
//!
//! A kernel maps a flat cell index to that cell's next value, reading only
//! previous-generation buffers. Every cell is computed by the same expression
//! whichever thread runs it, and nothing is reduced across cells, so results
//! are bitwise identical for every backend and worker count.

use std::fmt;
use std::num::NonZeroUsize;
use std::ops::Range;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::bench::timing::median;
use crate::error::{Error, Result};

/// Smallest work unit handed to a worker.
pub const MIN_CHUNK: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    Serial,
    Parallel(NonZeroUsize),
}

impl Backend {
    pub fn parallel(workers: usize) -> Result<Self> {
        NonZeroUsize::new(workers)
            .map(Backend::Parallel)
            .ok_or_else(|| Error::InvalidConfig("worker count must be at least 1".into()))
    }

    /// Parallel backend sized to the available hardware threads.
    pub fn parallel_default() -> Self {
        Backend::Parallel(std::thread::available_parallelism().unwrap_or(NonZeroUsize::MIN))
    }

    pub fn workers(self) -> usize {
        match self {
            Backend::Serial => 1,
            Backend::Parallel(k) => k.get(),
        }
    }

    pub fn is_serial(self) -> bool {
        matches!(self, Backend::Serial)
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backend::Serial => f.write_str("serial"),
            Backend::Parallel(k) => write!(f, "parallel:{k}"),
        }
    }
}

impl FromStr for Backend {
    type Err = String;

    /// `serial`, `parallel` (hardware default) or `parallel:<k>`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "serial" => Ok(Backend::Serial),
            "parallel" => Ok(Backend::parallel_default()),
            _ => {
                let k = s
                    .strip_prefix("parallel:")
                    .ok_or_else(|| format!("unknown backend '{s}'"))?;
                let k: usize = k.parse().map_err(|_| format!("bad worker count in '{s}'"))?;
                Backend::parallel(k).map_err(|e| e.to_string())
            }
        }
    }
}

impl Serialize for Backend {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Output range of one kernel launch and its partition into work units.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelPlan {
    range: Range<usize>,
    chunk_len: usize,
}

impl KernelPlan {
    /// Chunks of at least [`MIN_CHUNK`] cells, roughly four per worker.
    pub fn new(range: Range<usize>, backend: Backend) -> Self {
        let len = range.end.saturating_sub(range.start);
        let target = len.div_ceil(backend.workers() * 4);
        KernelPlan {
            range,
            chunk_len: target.max(MIN_CHUNK),
        }
    }

    /// Explicit chunk length, mainly for exercising the parallel path on small ranges.
    pub fn with_chunk_len(range: Range<usize>, chunk_len: usize) -> Self {
        KernelPlan {
            range,
            chunk_len: chunk_len.max(1),
        }
    }

    pub fn range(&self) -> Range<usize> {
        self.range.clone()
    }

    pub fn len(&self) -> usize {
        self.range.end.saturating_sub(self.range.start)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn chunk_len(&self) -> usize {
        self.chunk_len
    }

    /// Disjoint, ordered ranges covering `range` exactly.
    pub fn work_units(&self) -> impl Iterator<Item = Range<usize>> + '_ {
        let end = self.range.end;
        (self.range.start..end)
            .step_by(self.chunk_len)
            .map(move |s| s..(s + self.chunk_len).min(end))
    }
}

/// A backend together with its worker pool (none for serial).
pub struct Executor {
    backend: Backend,
    pool: Option<rayon::ThreadPool>,
}

impl fmt::Debug for Executor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Executor").field("backend", &self.backend).finish()
    }
}

impl Executor {
    pub fn new(backend: Backend) -> Result<Self> {
        let pool = match backend {
            Backend::Serial => None,
            Backend::Parallel(k) => Some(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(k.get())
                    .thread_name(|i| format!("yeebench-worker-{i}"))
                    .build()
                    .map_err(|e| Error::WorkerPool(e.to_string()))?,
            ),
        };
        Ok(Executor { backend, pool })
    }

    pub fn serial() -> Self {
        Executor {
            backend: Backend::Serial,
            pool: None,
        }
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    pub fn plan(&self, range: Range<usize>) -> KernelPlan {
        KernelPlan::new(range, self.backend)
    }

    /// Runs a closure inside the worker pool (or directly when serial).
    pub fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        match &self.pool {
            Some(pool) => pool.install(f),
            None => f(),
        }
    }
}

/// Writes `output[i] = kernel(i)` for every `i` in the plan's range and
/// copies `input[i]` everywhere else. Returns after all workers have joined.
pub fn execute_stencil<T, K>(
    exec: &Executor,
    input: &[T],
    output: &mut [T],
    plan: &KernelPlan,
    kernel: K,
) -> Result<()>
where
    T: Copy + Send + Sync,
    K: Fn(usize) -> T + Sync,
{
    if input.len() != output.len() {
        return Err(Error::ShapeMismatch {
            expected: input.len(),
            found: output.len(),
        });
    }
    let Range { start, end } = plan.range();
    if start > end || end > output.len() {
        return Err(Error::InvalidConfig(format!(
            "kernel range {start}..{end} outside buffer of {} cells",
            output.len()
        )));
    }
    output[..start].copy_from_slice(&input[..start]);
    output[end..].copy_from_slice(&input[end..]);

    let body = &mut output[start..end];
    let single_unit = plan.len() <= plan.chunk_len();
    match &exec.pool {
        Some(pool) if !single_unit => pool.install(|| {
            body.par_chunks_mut(plan.chunk_len())
                .enumerate()
                .for_each(|(u, chunk)| {
                    let base = start + u * plan.chunk_len();
                    for (off, cell) in chunk.iter_mut().enumerate() {
                        *cell = kernel(base + off);
                    }
                })
        }),
        _ => {
            for (off, cell) in body.iter_mut().enumerate() {
                *cell = kernel(start + off);
            }
        }
    }
    Ok(())
}

/// Median throughput over repeated timings of the same workload.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BackendThroughput {
    pub backend: Backend,
    pub median_s: f64,
    pub updates_per_s: f64,
}

/// Cell-updates per second at the median of `samples` (seconds).
pub fn backend_report(backend: Backend, samples: &[f64], cell_updates: f64) -> Result<BackendThroughput> {
    const MIN_SAMPLES: usize = 3;
    if samples.len() < MIN_SAMPLES {
        return Err(Error::InsufficientSamples {
            got: samples.len(),
            need: MIN_SAMPLES,
        });
    }
    let median_s = median(samples);
    if !(median_s > 0.0) {
        return Err(Error::NonPositiveInput("median elapsed time"));
    }
    Ok(BackendThroughput {
        backend,
        median_s,
        updates_per_s: cell_updates / median_s,
    })
}

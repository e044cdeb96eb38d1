use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::backend::{Backend, Executor};
use crate::bench::lu::{flop_count_left_division, lu_factor_with, lu_solve, relative_residual, Matrix};
use crate::bench::timing::{measure, median, TimingPolicy};
use crate::error::{Error, Result};
use crate::real::{Precision, Real};

/// Used when the platform does not report available memory.
const FALLBACK_MEMORY: u64 = 4 << 30;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum SkipReason {
    MemoryLimit { required_bytes: u64, cap_bytes: u64 },
}

impl fmt::Display for SkipReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SkipReason::MemoryLimit {
                required_bytes,
                cap_bytes,
            } => write!(f, "MemoryLimit: needs {required_bytes} bytes, cap is {cap_bytes} bytes"),
        }
    }
}

/// One timed factor+solve, or a skip entry with every measurement `None`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveBenchRecord {
    pub n: usize,
    pub precision: Precision,
    pub backend: Backend,
    /// Median seconds per factor+solve.
    pub elapsed_s: Option<f64>,
    pub flops: Option<f64>,
    pub gigaflops: Option<f64>,
    pub residual: Option<f64>,
    pub skipped: Option<SkipReason>,
}

impl SolveBenchRecord {
    fn skipped(n: usize, precision: Precision, backend: Backend, reason: SkipReason) -> Self {
        SolveBenchRecord {
            n,
            precision,
            backend,
            elapsed_s: None,
            flops: None,
            gigaflops: None,
            residual: None,
            skipped: Some(reason),
        }
    }

    /// Residual bound `n * 100 * eps` for this record's precision.
    pub fn residual_bound(&self) -> f64 {
        self.n as f64 * 100.0 * self.precision.epsilon()
    }
}

#[derive(Debug, Clone)]
pub struct LinsolveSweep {
    pub sizes: Vec<usize>,
    pub precisions: Vec<Precision>,
    pub backends: Vec<Backend>,
    pub seed: u64,
    pub memory_cap_bytes: u64,
    pub timing: TimingPolicy,
}

impl LinsolveSweep {
    pub fn new(sizes: Vec<usize>, seed: u64) -> Self {
        LinsolveSweep {
            sizes,
            precisions: vec![Precision::Single, Precision::Double],
            backends: vec![Backend::Serial, Backend::parallel_default()],
            seed,
            memory_cap_bytes: available_memory_bytes(),
            timing: TimingPolicy::default(),
        }
    }
}

/// `MemAvailable` from `/proc/meminfo`, or 4 GiB when unknown.
pub fn available_memory_bytes() -> u64 {
    std::fs::read_to_string("/proc/meminfo")
        .ok()
        .and_then(|s| {
            s.lines()
                .find(|l| l.starts_with("MemAvailable:"))
                .and_then(|l| l.split_whitespace().nth(1))
                .and_then(|kb| kb.parse::<u64>().ok())
        })
        .map_or(FALLBACK_MEMORY, |kb| kb * 1024)
}

/// Working set of one point: the matrix, its factored copy, and three vectors.
pub fn estimated_footprint(n: usize, precision: Precision) -> u64 {
    let n = n as u64;
    (2 * n * n + 3 * n).saturating_mul(precision.size_of() as u64)
}

/// Uniform `[-1, 1)` entries with `n` added on the diagonal, and a uniform
/// right-hand side. Drawn in `f64` so both precisions see the same system.
pub fn generate_system<T: Real>(n: usize, seed: u64) -> Result<(Matrix<T>, Vec<T>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let boost = n as f64;
    let mut data = Vec::new();
    data.try_reserve_exact(n * n)
        .map_err(|_| Error::AllocationFailure { bytes: n * n * std::mem::size_of::<T>() })?;
    for i in 0..n {
        for j in 0..n {
            let v: f64 = rng.gen_range(-1.0..1.0);
            data.push(T::from_f64_lossy(if i == j { v + boost } else { v }));
        }
    }
    let b = (0..n).map(|_| T::from_f64_lossy(rng.gen_range(-1.0..1.0))).collect();
    Ok((Matrix::from_row_major(n, data)?, b))
}

fn bench_point<T: Real>(n: usize, seed: u64, exec: &Executor, timing: &TimingPolicy) -> Result<SolveBenchRecord> {
    let (a, b) = generate_system::<T>(n, seed)?;
    let (samples, result) = measure(
        timing,
        || a.clone(),
        |m| lu_factor_with(m, exec).and_then(|f| lu_solve(&f, &b)),
    );
    let x = result?;
    let elapsed = median(&samples);
    let flops = flop_count_left_division(n);
    Ok(SolveBenchRecord {
        n,
        precision: T::PRECISION,
        backend: exec.backend(),
        elapsed_s: Some(elapsed),
        flops: Some(flops),
        gigaflops: Some(flops / elapsed / 1e9),
        residual: Some(relative_residual(&a, &x, &b).widen()),
        skipped: None,
    })
}

/// Every `(n, precision, backend)` in order. Points whose estimated
/// footprint exceeds the cap are reported as skipped, never attempted.
pub fn run_linsolve_bench(sweep: &LinsolveSweep) -> Result<Vec<SolveBenchRecord>> {
    let execs = sweep
        .backends
        .iter()
        .map(|&b| Executor::new(b))
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for &n in &sweep.sizes {
        if n < 2 {
            return Err(Error::InvalidConfig(format!("matrix size {n} is below 2")));
        }
        for &precision in &sweep.precisions {
            for exec in &execs {
                let required = estimated_footprint(n, precision);
                if required > sweep.memory_cap_bytes {
                    out.push(SolveBenchRecord::skipped(
                        n,
                        precision,
                        exec.backend(),
                        SkipReason::MemoryLimit {
                            required_bytes: required,
                            cap_bytes: sweep.memory_cap_bytes,
                        },
                    ));
                    continue;
                }
                let rec = match precision {
                    Precision::Single => bench_point::<f32>(n, sweep.seed, exec, &sweep.timing),
                    Precision::Double => bench_point::<f64>(n, sweep.seed, exec, &sweep.timing),
                };
                out.push(match rec {
                    Err(Error::AllocationFailure { bytes }) => SolveBenchRecord::skipped(
                        n,
                        precision,
                        exec.backend(),
                        SkipReason::MemoryLimit {
                            required_bytes: bytes as u64,
                            cap_bytes: sweep.memory_cap_bytes,
                        },
                    ),
                    other => other?,
                });
            }
        }
    }
    Ok(out)
}

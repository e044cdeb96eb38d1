//! Benchmark harness: copy bandwidth, dense solve gigaflops, FDTD
//! throughput, and serial-vs-parallel speedup.
//!
//! Measurements run one at a time; only the measured workload itself may
//! fan out across workers.

pub mod bandwidth;
pub mod fdtd;
pub mod linsolve;
pub mod lu;
pub mod speedup;
pub mod timing;

pub use bandwidth::{compute_bandwidth, measure_copy_bandwidth, BandwidthRecord, CopyTier};
pub use fdtd::{run_fdtd_bench, FdtdBenchRecord};
pub use linsolve::{
    available_memory_bytes, generate_system, run_linsolve_bench, LinsolveSweep, SkipReason,
    SolveBenchRecord,
};
pub use lu::{flop_count_left_division, lu_factor, lu_factor_with, lu_solve, relative_residual, LuFactorization, Matrix};
pub use speedup::{compute_speedup, speedups_for, SpeedupRecord};
pub use timing::{measure, median, TimingPolicy};

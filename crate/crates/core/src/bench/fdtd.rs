use serde::Serialize;

use crate::backend::Backend;
use crate::bench::speedup::{compute_fdtd_speedup, SpeedupRecord};
use crate::bench::timing::{measure, median, TimingPolicy};
use crate::config::SimulationConfig;
use crate::engine::Simulation;
use crate::error::Result;
use crate::material::make_vacuum_materials;
use crate::real::{Precision, Real};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FdtdBenchRecord {
    pub dims: usize,
    pub cells: usize,
    pub steps: u64,
    pub precision: Precision,
    pub backend: Backend,
    /// Median seconds per full run.
    pub elapsed_s: f64,
    /// `cells * 2 * steps`: one H and one E update per cell per step.
    pub cell_updates: f64,
    pub updates_per_s: f64,
    /// Digest of the final field state, equal across backends.
    pub digest: u64,
}

pub fn cell_updates(config: &SimulationConfig) -> f64 {
    config.extent.cells() as f64 * 2.0 * config.time_tot as f64
}

fn bench_config<T: Real>(config: &SimulationConfig, backend: Backend, timing: &TimingPolicy) -> Result<FdtdBenchRecord> {
    let materials = make_vacuum_materials::<T>(config.extent, config.units)?;
    let mut cfg = config.clone();
    cfg.snapshot_every = 0;
    // Allocation and worker-pool start-up stay outside the timed region.
    let (samples, last) = measure(
        timing,
        || Simulation::<T>::new(cfg.clone(), &materials, backend),
        |sim| -> Result<u64> {
            let mut sim = sim?;
            sim.advance(cfg.time_tot)?;
            Ok(sim.fields().digest())
        },
    );
    let digest = last?;
    let elapsed_s = median(&samples);
    let updates = cell_updates(&cfg);
    Ok(FdtdBenchRecord {
        dims: cfg.dims(),
        cells: cfg.extent.cells(),
        steps: cfg.time_tot,
        precision: T::PRECISION,
        backend,
        elapsed_s,
        cell_updates: updates,
        updates_per_s: updates / elapsed_s,
        digest,
    })
}

/// Times `run` for every config on every backend and pairs each parallel
/// record with the serial one of the same config.
pub fn run_fdtd_bench(
    configs: &[SimulationConfig],
    backends: &[Backend],
    timing: &TimingPolicy,
) -> Result<(Vec<FdtdBenchRecord>, Vec<SpeedupRecord>)> {
    let mut records = Vec::new();
    let mut speedups = Vec::new();
    for config in configs {
        config.validate()?;
        let mut group = Vec::new();
        for &backend in backends {
            group.push(match config.precision {
                Precision::Single => bench_config::<f32>(config, backend, timing)?,
                Precision::Double => bench_config::<f64>(config, backend, timing)?,
            });
        }
        if let Some(serial) = group.iter().find(|r| r.backend.is_serial()) {
            for par in group.iter().filter(|r| !r.backend.is_serial()) {
                speedups.push(compute_fdtd_speedup(par, serial)?);
            }
        }
        records.extend(group);
    }
    Ok((records, speedups))
}
